#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include "cricrec/corpus/corpus.h"

namespace cricrec {

struct SourceFile {
  std::string name;  // file stem, used as the match id
  std::string content;
};

struct Rejection {
  std::string file;
  std::string reason;
};

struct IngestResult {
  Corpus corpus;
  std::vector<Rejection> rejected;
};

// Reads every .json/.yaml/.yml member of a directory tree or a .zip archive.
std::vector<SourceFile> read_sources(const std::filesystem::path& input);

// Entries of a zip archive (stored or deflated members only).
std::vector<SourceFile> read_zip(const std::filesystem::path& archive);

// Parses the sources on `threads` workers (0 = hardware concurrency) and
// builds the corpus. Files that fail to parse are reported, not fatal.
IngestResult ingest(std::vector<SourceFile> sources, const Roster& roster, unsigned threads = 0);

}  // namespace cricrec
