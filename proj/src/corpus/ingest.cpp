#include "cricrec/corpus/ingest.h"

#include <zlib.h>

#include <algorithm>
#include <atomic>
#include <fstream>
#include <iterator>
#include <optional>
#include <thread>

#include "cricrec/corpus/parse.h"
#include "cricrec/error.h"

namespace cricrec {

namespace {

bool is_match_file(const std::filesystem::path& p) {
  const auto ext = p.extension().string();
  return ext == ".json" || ext == ".yaml" || ext == ".yml";
}

std::string slurp(const std::filesystem::path& p) {
  std::ifstream in(p, std::ios::binary);
  if (!in) throw not_found("cannot open " + p.string());
  return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

std::uint32_t le32(const std::string& b, std::size_t at) {
  if (at + 4 > b.size()) throw malformed("zip structure truncated");
  return std::uint32_t(std::uint8_t(b[at])) | std::uint32_t(std::uint8_t(b[at + 1])) << 8 |
         std::uint32_t(std::uint8_t(b[at + 2])) << 16 | std::uint32_t(std::uint8_t(b[at + 3])) << 24;
}

std::uint16_t le16(const std::string& b, std::size_t at) {
  if (at + 2 > b.size()) throw malformed("zip structure truncated");
  return static_cast<std::uint16_t>(std::uint8_t(b[at]) | std::uint8_t(b[at + 1]) << 8);
}

std::string inflate_raw(const char* data, std::size_t size, std::size_t expected) {
  std::string out(expected, '\0');
  z_stream zs{};
  if (inflateInit2(&zs, -MAX_WBITS) != Z_OK) throw Error(ErrorClass::internal, "inflateInit2 failed");
  zs.next_in = reinterpret_cast<Bytef*>(const_cast<char*>(data));
  zs.avail_in = static_cast<uInt>(size);
  zs.next_out = reinterpret_cast<Bytef*>(out.data());
  zs.avail_out = static_cast<uInt>(out.size());
  const int rc = inflate(&zs, Z_FINISH);
  inflateEnd(&zs);
  if (rc != Z_STREAM_END || zs.total_out != expected) throw malformed("corrupt deflate stream in zip member");
  return out;
}

}  // namespace

std::vector<SourceFile> read_zip(const std::filesystem::path& archive) {
  const std::string b = slurp(archive);
  // End-of-central-directory record sits in the last 64 KiB + 22 bytes.
  std::optional<std::size_t> eocd;
  if (b.size() >= 22) {
    const std::size_t lo = b.size() > 65557 ? b.size() - 65557 : 0;
    for (std::size_t i = b.size() - 22;; --i) {
      if (le32(b, i) == 0x06054b50) {
        eocd = i;
        break;
      }
      if (i == lo) break;
    }
  }
  if (!eocd) throw malformed("not a zip archive: " + archive.string());
  const std::uint16_t entries = le16(b, *eocd + 10);
  std::size_t at = le32(b, *eocd + 16);

  std::vector<SourceFile> out;
  for (std::uint16_t e = 0; e < entries; ++e) {
    if (le32(b, at) != 0x02014b50) throw malformed("bad zip central directory");
    const std::uint16_t method = le16(b, at + 10);
    const std::uint32_t csize = le32(b, at + 20);
    const std::uint32_t usize = le32(b, at + 24);
    const std::uint16_t name_len = le16(b, at + 28);
    const std::uint16_t extra_len = le16(b, at + 30);
    const std::uint16_t comment_len = le16(b, at + 32);
    const std::uint32_t local = le32(b, at + 42);
    const std::filesystem::path name = b.substr(at + 46, name_len);
    at += 46 + name_len + extra_len + comment_len;
    if (!is_match_file(name)) continue;

    if (le32(b, local) != 0x04034b50) throw malformed("bad zip local header for " + name.string());
    const std::size_t data = local + 30 + le16(b, local + 26) + le16(b, local + 28);
    if (data + csize > b.size()) throw malformed("zip member overruns archive: " + name.string());
    std::string content;
    if (method == 0) content = b.substr(data, csize);
    else if (method == 8) content = inflate_raw(b.data() + data, csize, usize);
    else throw malformed("unsupported zip compression method for " + name.string());
    out.push_back({name.stem().string(), std::move(content)});
  }
  return out;
}

std::vector<SourceFile> read_sources(const std::filesystem::path& input) {
  if (!std::filesystem::exists(input)) throw not_found("input not found: " + input.string());
  if (std::filesystem::is_regular_file(input)) {
    if (input.extension() == ".zip") return read_zip(input);
    return {{input.stem().string(), slurp(input)}};
  }
  std::vector<std::filesystem::path> paths;
  for (const auto& entry : std::filesystem::recursive_directory_iterator(input))
    if (entry.is_regular_file() && is_match_file(entry.path())) paths.push_back(entry.path());
  std::sort(paths.begin(), paths.end());
  std::vector<SourceFile> out;
  out.reserve(paths.size());
  for (const auto& p : paths) out.push_back({p.stem().string(), slurp(p)});
  return out;
}

IngestResult ingest(std::vector<SourceFile> sources, const Roster& roster, unsigned threads) {
  std::sort(sources.begin(), sources.end(), [](const SourceFile& a, const SourceFile& b) { return a.name < b.name; });
  std::vector<std::optional<MatchRecord>> parsed(sources.size());
  std::vector<std::string> errors(sources.size());
  std::atomic<std::size_t> next{0};
  auto work = [&] {
    for (std::size_t i = next++; i < sources.size(); i = next++) {
      try {
        parsed[i] = parse_match(sources[i].content, sources[i].name, roster);
      } catch (const Error& e) {
        errors[i] = e.what();
      }
      std::string().swap(sources[i].content);
    }
  };
  if (threads == 0) threads = std::max(1u, std::thread::hardware_concurrency());
  threads = static_cast<unsigned>(std::min<std::size_t>(threads, std::max<std::size_t>(1, sources.size())));
  {
    std::vector<std::jthread> pool;
    for (unsigned t = 1; t < threads; ++t) pool.emplace_back(work);
    work();
  }

  IngestResult result;
  std::vector<MatchRecord> matches;
  for (std::size_t i = 0; i < sources.size(); ++i) {
    if (parsed[i]) matches.push_back(std::move(*parsed[i]));
    else result.rejected.push_back({sources[i].name, errors[i]});
  }
  result.corpus = Corpus::build(std::move(matches), roster);
  return result;
}

}  // namespace cricrec
