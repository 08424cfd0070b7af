// src/zip.cc

// Copyright 2025  cseval authors

// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//  http://www.apache.org/licenses/LICENSE-2.0
//
// THIS CODE IS PROVIDED *AS IS* BASIS, WITHOUT WARRANTIES OR CONDITIONS OF ANY
// KIND, EITHER EXPRESS OR IMPLIED, INCLUDING WITHOUT LIMITATION ANY IMPLIED
// WARRANTIES OR CONDITIONS OF TITLE, FITNESS FOR A PARTICULAR PURPOSE,
// MERCHANTABLITY OR NON-INFRINGEMENT.
// See the Apache 2 License for the specific language governing permissions and
// limitations under the License.

#include "cseval/zip.h"

#include <zlib.h>

#include <cstring>
#include <fstream>

#include "cseval/csv.h"
#include "cseval/error.h"

namespace cseval {

namespace {

constexpr std::uint32_t kLocalSig = 0x04034b50;
constexpr std::uint32_t kCentralSig = 0x02014b50;
constexpr std::uint32_t kEndSig = 0x06054b50;

std::uint16_t read_u16(const std::string& b, std::size_t off) {
  return static_cast<std::uint16_t>(static_cast<unsigned char>(b[off]) |
                                    (static_cast<unsigned char>(b[off + 1]) << 8));
}

std::uint32_t read_u32(const std::string& b, std::size_t off) {
  return static_cast<std::uint32_t>(static_cast<unsigned char>(b[off])) |
         (static_cast<std::uint32_t>(static_cast<unsigned char>(b[off + 1])) << 8) |
         (static_cast<std::uint32_t>(static_cast<unsigned char>(b[off + 2])) << 16) |
         (static_cast<std::uint32_t>(static_cast<unsigned char>(b[off + 3])) << 24);
}

void put_u16(std::string& b, std::uint16_t v) {
  b.push_back(static_cast<char>(v & 0xff));
  b.push_back(static_cast<char>((v >> 8) & 0xff));
}

void put_u32(std::string& b, std::uint32_t v) {
  b.push_back(static_cast<char>(v & 0xff));
  b.push_back(static_cast<char>((v >> 8) & 0xff));
  b.push_back(static_cast<char>((v >> 16) & 0xff));
  b.push_back(static_cast<char>((v >> 24) & 0xff));
}

std::string inflate_raw(const std::string& compressed, std::size_t expected_size) {
  std::string out(expected_size, '\0');
  z_stream zs;
  std::memset(&zs, 0, sizeof(zs));
  if (inflateInit2(&zs, -MAX_WBITS) != Z_OK) {
    throw SubmissionError("zlib initialization failed");
  }
  zs.next_in = reinterpret_cast<Bytef*>(const_cast<char*>(compressed.data()));
  zs.avail_in = static_cast<uInt>(compressed.size());
  zs.next_out = reinterpret_cast<Bytef*>(out.data());
  zs.avail_out = static_cast<uInt>(out.size());
  const int rc = inflate(&zs, Z_FINISH);
  inflateEnd(&zs);
  if (rc != Z_STREAM_END || zs.total_out != expected_size) {
    throw SubmissionError("corrupt deflate stream in archive entry");
  }
  return out;
}

}  // namespace

bool looks_like_zip(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) return false;
  char magic[4] = {0, 0, 0, 0};
  in.read(magic, 4);
  return in.gcount() >= 4 && magic[0] == 'P' && magic[1] == 'K' &&
         (magic[2] == 3 || magic[2] == 5) && (magic[3] == magic[2] + 1);
}

std::vector<ZipEntry> zip_read(const std::string& path) {
  const std::string bytes = read_file(path);
  if (bytes.size() < 22) throw SubmissionError("not a zip archive: " + path);

  // End-of-central-directory record: scan backwards over a possible comment.
  std::size_t eocd = std::string::npos;
  const std::size_t scan_start = bytes.size() >= 22 + 65535 ? bytes.size() - 22 - 65535 : 0;
  for (std::size_t i = bytes.size() - 22 + 1; i-- > scan_start;) {
    if (read_u32(bytes, i) == kEndSig) {
      eocd = i;
      break;
    }
  }
  if (eocd == std::string::npos) {
    throw SubmissionError("zip end-of-central-directory record not found in " + path);
  }

  const std::uint16_t entry_count = read_u16(bytes, eocd + 10);
  const std::uint32_t cd_offset = read_u32(bytes, eocd + 16);
  if (cd_offset > bytes.size()) throw SubmissionError("corrupt zip central directory");

  std::vector<ZipEntry> entries;
  std::size_t pos = cd_offset;
  for (std::uint16_t n = 0; n < entry_count; ++n) {
    if (pos + 46 > bytes.size() || read_u32(bytes, pos) != kCentralSig) {
      throw SubmissionError("corrupt zip central directory");
    }
    const std::uint16_t flags = read_u16(bytes, pos + 8);
    const std::uint16_t method = read_u16(bytes, pos + 10);
    const std::uint32_t crc = read_u32(bytes, pos + 16);
    const std::uint32_t comp_size = read_u32(bytes, pos + 20);
    const std::uint32_t uncomp_size = read_u32(bytes, pos + 24);
    const std::uint16_t name_len = read_u16(bytes, pos + 28);
    const std::uint16_t extra_len = read_u16(bytes, pos + 30);
    const std::uint16_t comment_len = read_u16(bytes, pos + 32);
    const std::uint32_t local_offset = read_u32(bytes, pos + 42);
    if (pos + 46 + name_len > bytes.size()) throw SubmissionError("corrupt zip entry name");
    const std::string name = bytes.substr(pos + 46, name_len);
    pos += 46u + name_len + extra_len + comment_len;

    if (!name.empty() && name.back() == '/') continue;  // directory entry
    if (flags & 0x1) throw SubmissionError("encrypted zip entry: " + name);
    if (method != 0 && method != 8) {
      throw SubmissionError("unsupported compression method in entry " + name);
    }

    if (local_offset + 30 > bytes.size() || read_u32(bytes, local_offset) != kLocalSig) {
      throw SubmissionError("corrupt local header for entry " + name);
    }
    const std::uint16_t local_name_len = read_u16(bytes, local_offset + 26);
    const std::uint16_t local_extra_len = read_u16(bytes, local_offset + 28);
    const std::size_t data_start = local_offset + 30u + local_name_len + local_extra_len;
    if (data_start + comp_size > bytes.size()) {
      throw SubmissionError("entry data out of bounds: " + name);
    }
    const std::string raw = bytes.substr(data_start, comp_size);
    std::string data = (method == 0) ? raw : inflate_raw(raw, uncomp_size);
    if (method == 0 && data.size() != uncomp_size) {
      throw SubmissionError("stored entry size mismatch: " + name);
    }
    const auto actual_crc = crc32(0L, reinterpret_cast<const Bytef*>(data.data()),
                                  static_cast<uInt>(data.size()));
    if (static_cast<std::uint32_t>(actual_crc) != crc) {
      throw SubmissionError("CRC mismatch, unreadable entry: " + name);
    }
    entries.push_back({name, std::move(data)});
  }
  return entries;
}

void zip_write(const std::string& path, const std::vector<ZipEntry>& entries) {
  std::string out;
  std::string central;
  for (const ZipEntry& e : entries) {
    const std::uint32_t offset = static_cast<std::uint32_t>(out.size());
    const auto crc = static_cast<std::uint32_t>(crc32(
        0L, reinterpret_cast<const Bytef*>(e.data.data()), static_cast<uInt>(e.data.size())));
    const auto size = static_cast<std::uint32_t>(e.data.size());

    put_u32(out, kLocalSig);
    put_u16(out, 20);  // version needed
    put_u16(out, 0);   // flags
    put_u16(out, 0);   // method: stored
    put_u16(out, 0);   // mod time
    put_u16(out, 0);   // mod date
    put_u32(out, crc);
    put_u32(out, size);
    put_u32(out, size);
    put_u16(out, static_cast<std::uint16_t>(e.name.size()));
    put_u16(out, 0);  // extra
    out += e.name;
    out += e.data;

    put_u32(central, kCentralSig);
    put_u16(central, 20);  // version made by
    put_u16(central, 20);  // version needed
    put_u16(central, 0);
    put_u16(central, 0);
    put_u16(central, 0);
    put_u16(central, 0);
    put_u32(central, crc);
    put_u32(central, size);
    put_u32(central, size);
    put_u16(central, static_cast<std::uint16_t>(e.name.size()));
    put_u16(central, 0);
    put_u16(central, 0);
    put_u16(central, 0);  // disk number
    put_u16(central, 0);  // internal attrs
    put_u32(central, 0);  // external attrs
    put_u32(central, offset);
    central += e.name;
  }

  const std::uint32_t cd_offset = static_cast<std::uint32_t>(out.size());
  out += central;
  put_u32(out, kEndSig);
  put_u16(out, 0);
  put_u16(out, 0);
  put_u16(out, static_cast<std::uint16_t>(entries.size()));
  put_u16(out, static_cast<std::uint16_t>(entries.size()));
  put_u32(out, static_cast<std::uint32_t>(central.size()));
  put_u32(out, cd_offset);
  put_u16(out, 0);  // comment length

  write_file(path, out);
}

}  // namespace cseval
