#include "cricrec/corpus/snapshot.h"

#include <zlib.h>

#include <cstring>
#include <fstream>
#include <iterator>

#include "cricrec/error.h"

namespace cricrec {

namespace {

constexpr char kMagic[8] = {'C', 'R', 'I', 'C', 'S', 'N', 'A', 'P'};

Error integrity(std::string msg) { return {ErrorClass::snapshot_integrity, std::move(msg)}; }

class Writer {
 public:
  template <typename T>
  void put(T v) {
    static_assert(std::is_integral_v<T>);
    using U = std::make_unsigned_t<T>;
    U u = static_cast<U>(v);
    for (std::size_t i = 0; i < sizeof(T); ++i) buf_.push_back(static_cast<std::uint8_t>(u >> (8 * i)));
  }
  void str(const std::string& s) {
    put<std::uint32_t>(static_cast<std::uint32_t>(s.size()));
    buf_.insert(buf_.end(), s.begin(), s.end());
  }
  void raw(const void* p, std::size_t n) {
    auto b = static_cast<const std::uint8_t*>(p);
    buf_.insert(buf_.end(), b, b + n);
  }
  std::vector<std::uint8_t>& bytes() { return buf_; }

 private:
  std::vector<std::uint8_t> buf_;
};

class Reader {
 public:
  Reader(const std::uint8_t* p, std::size_t n) : p_(p), end_(p + n) {}

  template <typename T>
  T get() {
    need(sizeof(T));
    using U = std::make_unsigned_t<T>;
    U u = 0;
    for (std::size_t i = 0; i < sizeof(T); ++i) u |= static_cast<U>(U(p_[i]) << (8 * i));
    p_ += sizeof(T);
    return static_cast<T>(u);
  }
  std::string str() {
    auto n = get<std::uint32_t>();
    need(n);
    std::string s(reinterpret_cast<const char*>(p_), n);
    p_ += n;
    return s;
  }
  void expect_end() const {
    if (p_ != end_) throw integrity("snapshot has unexpected trailing content");
  }

 private:
  void need(std::size_t n) const {
    if (std::size_t(end_ - p_) < n) throw integrity("snapshot truncated");
  }
  const std::uint8_t* p_;
  const std::uint8_t* end_;
};

std::uint32_t crc_of(const std::uint8_t* p, std::size_t n) {
  uLong crc = crc32(0L, Z_NULL, 0);
  // zlib takes uInt lengths; feed in chunks for large snapshots.
  while (n > 0) {
    const uInt chunk = static_cast<uInt>(std::min<std::size_t>(n, 1u << 30));
    crc = crc32(crc, p, chunk);
    p += chunk;
    n -= chunk;
  }
  return static_cast<std::uint32_t>(crc);
}

}  // namespace

struct SnapshotCodec {
  static std::vector<std::uint8_t> encode(const Corpus& c) {
    Writer w;
    w.raw(kMagic, sizeof kMagic);
    w.put<std::uint32_t>(kSnapshotVersion);
    w.put<std::uint32_t>(c.extras_kinds_known() ? 1u : 0u);

    w.put<std::uint32_t>(static_cast<std::uint32_t>(c.ids_.size()));
    for (const PlayerId& id : c.ids_) {
      const PlayerInfo& info = c.registry_.players.at(id);
      w.str(id);
      w.str(info.name);
      w.str(info.country);
      w.put<std::uint8_t>(info.role ? static_cast<std::uint8_t>(*info.role) : 255);
    }
    for (const auto* numbering : {&c.registry_.batsmen, &c.registry_.bowlers}) {
      w.put<std::uint32_t>(static_cast<std::uint32_t>(numbering->size()));
      for (const PlayerId& id : *numbering) w.put<std::uint32_t>(c.key_of_.at(id));
    }

    w.put<std::uint32_t>(static_cast<std::uint32_t>(c.matches_.size()));
    for (const MatchInfo& m : c.matches_) {
      w.str(m.match_id);
      w.put<std::int32_t>(m.date.year);
      w.put<std::int32_t>(m.date.month);
      w.put<std::int32_t>(m.date.day);
      w.str(m.venue);
      w.str(m.teams[0]);
      w.str(m.teams[1]);
      w.str(m.toss);
      w.str(m.result);
      w.put<std::uint8_t>(m.extras_kinds_known);
      w.put<std::uint32_t>(m.count);
      for (std::uint32_t i = m.first; i < m.first + m.count; ++i) {
        const PackedDelivery& d = c.deliveries_[i];
        w.put(d.batsman);
        w.put(d.non_striker);
        w.put(d.bowler);
        w.put(d.dismissed);
        w.put(d.over);
        w.put(d.extras);
        w.put(d.ball);
        w.put(d.innings);
        w.put(d.runs);
        w.put(static_cast<std::uint8_t>(d.kind));
        w.put<std::uint8_t>(d.wicket);
      }
    }

    w.put<std::uint32_t>(static_cast<std::uint32_t>(c.tables_.career.size()));
    for (const CareerStats& s : c.tables_.career) {
      for (auto v : {s.batting.runs, s.batting.balls_faced, s.batting.dismissals, s.bowling.runs_conceded,
                     s.bowling.bat_runs_conceded, s.bowling.legal_balls, s.bowling.wickets, s.bowling.extras_conceded})
        w.put<std::int64_t>(v);
    }
    std::uint64_t n = 0;
    for (const auto& row : c.tables_.by_batsman) n += row.size();
    w.put<std::uint64_t>(n);
    for (const auto& row : c.tables_.by_batsman) {
      for (const MatchupStats& m : row) {
        w.put(m.batsman);
        w.put(m.bowler);
        w.put<std::int64_t>(m.balls);
        w.put<std::int64_t>(m.runs);
        w.put<std::int64_t>(m.outs);
        w.put<std::int64_t>(m.extras);
      }
    }
    auto& bytes = w.bytes();
    w.put<std::uint32_t>(crc_of(bytes.data(), bytes.size()));
    return std::move(bytes);
  }

  static Corpus decode(const std::vector<std::uint8_t>& bytes) {
    if (bytes.size() < sizeof kMagic + 12 || std::memcmp(bytes.data(), kMagic, sizeof kMagic) != 0)
      throw integrity("not a snapshot file");
    Reader head(bytes.data() + sizeof kMagic, 4);
    const auto version = head.get<std::uint32_t>();
    if (version != kSnapshotVersion)
      throw integrity("snapshot format version " + std::to_string(version) + " does not match expected " +
                      std::to_string(kSnapshotVersion));
    const std::size_t body = bytes.size() - 4;
    Reader tail(bytes.data() + body, 4);
    if (tail.get<std::uint32_t>() != crc_of(bytes.data(), body)) throw integrity("snapshot checksum mismatch");

    Reader r(bytes.data() + sizeof kMagic + 4, body - sizeof kMagic - 4);
    Corpus c;
    r.get<std::uint32_t>();  // flags are derivable from the matches

    const auto nplayers = r.get<std::uint32_t>();
    for (std::uint32_t i = 0; i < nplayers; ++i) {
      PlayerId id = r.str();
      PlayerInfo info;
      info.name = r.str();
      info.country = r.str();
      const auto role = r.get<std::uint8_t>();
      if (role != 255) {
        if (role > static_cast<std::uint8_t>(Role::bowling_allrounder)) throw integrity("bad role code");
        info.role = static_cast<Role>(role);
      }
      c.ids_.push_back(id);
      c.registry_.players.emplace(std::move(id), std::move(info));
    }
    c.index_ids();
    auto checked_key = [&](std::uint32_t k, bool allow_none = false) {
      if (k >= nplayers && !(allow_none && k == kNoPlayer)) throw integrity("player key out of range");
      return k;
    };
    for (auto* numbering : {&c.registry_.batsmen, &c.registry_.bowlers}) {
      const auto n = r.get<std::uint32_t>();
      for (std::uint32_t i = 0; i < n; ++i) numbering->push_back(c.ids_[checked_key(r.get<std::uint32_t>())]);
    }
    for (std::size_t i = 0; i < c.registry_.batsmen.size(); ++i) c.registry_.batsman_index[c.registry_.batsmen[i]] = i;
    for (std::size_t i = 0; i < c.registry_.bowlers.size(); ++i) c.registry_.bowler_index[c.registry_.bowlers[i]] = i;

    const auto nmatches = r.get<std::uint32_t>();
    for (std::uint32_t i = 0; i < nmatches; ++i) {
      MatchInfo m;
      m.match_id = r.str();
      m.date.year = r.get<std::int32_t>();
      m.date.month = r.get<std::int32_t>();
      m.date.day = r.get<std::int32_t>();
      m.venue = r.str();
      m.teams[0] = r.str();
      m.teams[1] = r.str();
      m.toss = r.str();
      m.result = r.str();
      m.extras_kinds_known = r.get<std::uint8_t>() != 0;
      m.count = r.get<std::uint32_t>();
      m.first = static_cast<std::uint32_t>(c.deliveries_.size());
      for (std::uint32_t j = 0; j < m.count; ++j) {
        PackedDelivery d;
        d.batsman = checked_key(r.get<std::uint32_t>());
        d.non_striker = checked_key(r.get<std::uint32_t>(), true);
        d.bowler = checked_key(r.get<std::uint32_t>());
        d.dismissed = checked_key(r.get<std::uint32_t>(), true);
        d.over = r.get<std::uint16_t>();
        d.extras = r.get<std::uint16_t>();
        d.ball = r.get<std::uint8_t>();
        d.innings = r.get<std::uint8_t>();
        d.runs = r.get<std::uint8_t>();
        const auto kind = r.get<std::uint8_t>();
        if (kind > static_cast<std::uint8_t>(ExtrasKind::leg_bye)) throw integrity("bad extras kind");
        d.kind = static_cast<ExtrasKind>(kind);
        d.wicket = r.get<std::uint8_t>() != 0;
        c.deliveries_.push_back(d);
      }
      c.matches_.push_back(std::move(m));
    }

    const auto ncareer = r.get<std::uint32_t>();
    if (ncareer != nplayers) throw integrity("career table size mismatch");
    c.tables_.career.resize(ncareer);
    for (CareerStats& s : c.tables_.career) {
      for (std::int64_t* v : {&s.batting.runs, &s.batting.balls_faced, &s.batting.dismissals, &s.bowling.runs_conceded,
                              &s.bowling.bat_runs_conceded, &s.bowling.legal_balls, &s.bowling.wickets,
                              &s.bowling.extras_conceded})
        *v = r.get<std::int64_t>();
    }
    const auto nmatchups = r.get<std::uint64_t>();
    c.tables_.by_batsman.assign(nplayers, {});
    for (std::uint64_t i = 0; i < nmatchups; ++i) {
      MatchupStats m;
      m.batsman = checked_key(r.get<std::uint32_t>());
      m.bowler = checked_key(r.get<std::uint32_t>());
      m.balls = r.get<std::int64_t>();
      m.runs = r.get<std::int64_t>();
      m.outs = r.get<std::int64_t>();
      m.extras = r.get<std::int64_t>();
      c.tables_.by_batsman[m.batsman].push_back(m);
    }
    c.tables_.index_by_bowler();
    r.expect_end();
    return c;
  }
};

std::vector<std::uint8_t> encode_snapshot(const Corpus& corpus) { return SnapshotCodec::encode(corpus); }
Corpus decode_snapshot(const std::vector<std::uint8_t>& bytes) { return SnapshotCodec::decode(bytes); }

void snapshot_save(const Corpus& corpus, const std::filesystem::path& path) {
  if (std::filesystem::exists(path))
    throw Error(ErrorClass::usage, "refusing to overwrite existing snapshot " + path.string());
  const auto bytes = encode_snapshot(corpus);
  const auto tmp = std::filesystem::path(path.string() + ".partial");
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw Error(ErrorClass::internal, "cannot write " + tmp.string());
    out.write(reinterpret_cast<const char*>(bytes.data()), static_cast<std::streamsize>(bytes.size()));
    if (!out) throw Error(ErrorClass::internal, "short write to " + tmp.string());
  }
  std::filesystem::rename(tmp, path);
  using std::filesystem::perms;
  std::filesystem::permissions(path, perms::owner_read | perms::group_read | perms::others_read);
}

Corpus snapshot_load(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw not_found("cannot open snapshot " + path.string());
  std::vector<std::uint8_t> bytes((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
  return decode_snapshot(bytes);
}

}  // namespace cricrec
