#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

#include "cricrec/corpus/corpus.h"

namespace cricrec {

// Snapshot container, little-endian throughout:
//
//   "CRICSNAP"  8-byte magic
//   u32         format version (kSnapshotVersion)
//   u32         flags; bit 0 set when every match carried an extras breakdown
//   players     u32 n, then per player: str id, str name, str country, u8 role (255 = none)
//   numbering   u32 n + n × u32 key for batsmen, then the same for bowlers
//   matches     u32 n, then per match: str id, i32 y/m/d, str venue, str team×2,
//               str toss, str result, u8 kinds_known, u32 n deliveries,
//               n × {u32 batsman, non_striker, bowler, dismissed, u16 over,
//                    u16 extras, u8 ball, u8 innings, u8 runs, u8 kind, u8 wicket}
//   career      u32 n, then per player 8 × i64 (batting runs, balls, dismissals;
//               bowling runs, bat runs, legal balls, wickets, extras)
//   matchups    u64 n, then n × {u32 batsman, u32 bowler, i64 balls, runs, outs, extras}
//   u32         CRC-32 of every preceding byte
//
// str is u32 length followed by UTF-8 bytes.
inline constexpr std::uint32_t kSnapshotVersion = 1;

std::vector<std::uint8_t> encode_snapshot(const Corpus& corpus);
Corpus decode_snapshot(const std::vector<std::uint8_t>& bytes);

void snapshot_save(const Corpus& corpus, const std::filesystem::path& path);
Corpus snapshot_load(const std::filesystem::path& path);

}  // namespace cricrec
