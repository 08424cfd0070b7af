// include/cseval/zip.h

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

#ifndef CSEVAL_ZIP_H_
#define CSEVAL_ZIP_H_

#include <string>
#include <vector>

namespace cseval {

struct ZipEntry {
  std::string name;
  std::string data;
};

// Reads a zip archive.  Supports stored and deflate entries; directory
// entries are skipped.  Throws IoError when the file itself cannot be read
// and SubmissionError (rule "archive-structure") when the archive content is
// malformed, encrypted, or fails its CRC.
std::vector<ZipEntry> zip_read(const std::string& path);

// Writes a zip archive with stored (uncompressed) entries and zeroed
// timestamps, so identical inputs produce identical bytes.
void zip_write(const std::string& path, const std::vector<ZipEntry>& entries);

bool looks_like_zip(const std::string& path);

}  // namespace cseval

#endif  // CSEVAL_ZIP_H_
