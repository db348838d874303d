#include "cricrec/interface/cli.h"

#include <algorithm>
#include <cstdlib>
#include <fstream>
#include <functional>
#include <optional>

#include <CLI11.hpp>

#include "cricrec/corpus/ingest.h"
#include "cricrec/corpus/snapshot.h"
#include "cricrec/embedding/cluster.h"
#include "cricrec/embedding/similarity.h"
#include "cricrec/error.h"
#include "cricrec/format.h"
#include "cricrec/interface/engine.h"
#include "cricrec/interface/service.h"
#include "cricrec/rating/monte_carlo.h"
#include "cricrec/recommend/evaluate.h"

namespace cricrec {

namespace {

struct Common {
  std::string snapshot;
  std::string config;
  std::string out;
  unsigned threads = 0;
};

void add_snapshot(CLI::App* app, Common& c) {
  app->add_option("--snapshot", c.snapshot, std::string("Snapshot file (default $") + kSnapshotEnv + ")");
}

void add_config(CLI::App* app, Common& c) {
  app->add_option("--config", c.config, "JSON file of threshold overrides");
  app->add_option("--threads", c.threads, "Worker threads (0 = all cores)");
}

void add_out(CLI::App* app, Common& c) { app->add_option("--out", c.out, "Output file (default stdout)"); }

std::filesystem::path snapshot_path(const Common& c) {
  if (!c.snapshot.empty()) return c.snapshot;
  if (const char* env = std::getenv(kSnapshotEnv); env && *env) return env;
  throw Error(ErrorClass::usage, std::string("no snapshot given: pass --snapshot or set ") + kSnapshotEnv);
}

RecommendConfig config_of(const Common& c) { return c.config.empty() ? RecommendConfig{} : load_config(c.config); }

// Writes to --out when given, else to `out`.
void emit(const Common& c, std::ostream& out, const std::function<void(std::ostream&)>& body) {
  if (c.out.empty()) {
    body(out);
    return;
  }
  std::ofstream file(c.out, std::ios::binary);
  if (!file) throw Error(ErrorClass::usage, "cannot write '" + c.out + "'");
  body(file);
  if (!file) throw Error(ErrorClass::internal, "failed writing '" + c.out + "'");
}

Side parse_side_option(const std::string& text) {
  auto s = parse_side(text);
  if (!s) throw Error(ErrorClass::usage, "side must be batting or bowling");
  return *s;
}

std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string q = "\"";
  for (char ch : s) q += ch == '"' ? std::string("\"\"") : std::string(1, ch);
  return q + "\"";
}

std::string csv_number(const std::optional<double>& v) { return v ? format_number(*v) : ""; }

std::vector<Side> registered_sides(const Corpus& corpus, const PlayerId& id) {
  std::vector<Side> sides;
  for (Side s : {Side::batting, Side::bowling})
    if (corpus.registry().index_of(id, s)) sides.push_back(s);
  return sides;
}

// ---- subcommands ----

struct IngestArgs {
  std::string input, roster, out;
  unsigned threads = 0;
};

void run_ingest(const IngestArgs& a, std::ostream& out) {
  const Roster roster = Roster::load(a.roster);
  IngestResult r = ingest(read_sources(a.input), roster, a.threads);
  snapshot_save(r.corpus, a.out);
  out << "matches\t" << r.corpus.matches().size() << "\nplayers\t" << r.corpus.registry().players.size()
      << "\ndeliveries\t" << r.corpus.deliveries().size() << "\nrejected\t" << r.rejected.size() << '\n';
  for (const auto& rej : r.rejected) out << "# rejected " << rej.file << ": " << rej.reason << '\n';
  for (const auto& w : r.corpus.registry().warnings) out << "# warning " << w << '\n';
}

struct RateArgs {
  Common common;
  std::string player;
  bool by_year = false;
  bool baseline = false;
};

void run_rate(const RateArgs& a, std::ostream& out) {
  const Corpus corpus = snapshot_load(snapshot_path(a.common));
  const RatingConfig cfg = config_of(a.common).rating;
  std::vector<PlayerId> players;
  if (!a.player.empty()) {
    corpus.key(a.player);
    players.push_back(a.player);
  } else {
    for (const auto& [id, info] : corpus.registry().players) players.push_back(id);
  }
  emit(a.common, out, [&](std::ostream& o) {
    o << "player,role,side,period,phi_player";
    if (a.baseline) o << ",baseline";
    if (a.by_year) o << ",phi_normalized" << (a.baseline ? ",baseline_normalized" : "");
    o << ",balls,runs,outs,note\n";
    for (const PlayerId& id : players) {
      const PlayerKey key = corpus.key(id);
      for (Side side : registered_sides(corpus, id)) {
        auto row = [&](const RatingRecord& rec, const std::string& period, const SeriesPoint* point) {
          o << csv_field(id) << ',' << (rec.role ? role_name(*rec.role) : "") << ',' << side_name(side) << ','
            << period << ',' << csv_number(rec.phi_player);
          if (a.baseline) o << ',' << csv_number(rec.baseline);
          if (point) {
            o << ',' << csv_number(point->phi_normalized);
            if (a.baseline) o << ',' << csv_number(point->baseline_normalized);
          }
          o << ',' << rec.balls << ',' << rec.runs << ',' << rec.outs << ',' << csv_field(rec.note) << '\n';
        };
        if (!a.by_year) {
          row(rate_player(corpus, key, side, cfg), "career", nullptr);
          continue;
        }
        for (const SeriesPoint& p : rating_timeseries(corpus, key, side, cfg))
          row(rate_player(corpus, key, side, cfg, DateRange::year(p.year), cfg.min_bucket_balls),
              std::to_string(p.year), &p);
      }
    }
  });
}

struct SimulateArgs {
  Common common;
  double r = 0, avg = 0;
  std::int64_t trials = 100000;
  std::uint64_t seed = 1;
};

void run_simulate(const SimulateArgs& a, std::ostream& out) {
  if (a.trials < 0) throw Error(ErrorClass::usage, "--trials must not be negative");
  const InningsModel model = InningsModel::make(a.r, a.avg);
  const InningsMoments m = innings_moments(model);
  emit(a.common, out, [&](std::ostream& o) {
    o << "r\t" << format_number(a.r) << "\navg\t" << format_number(a.avg) << "\np_out\t"
      << format_number(model.dismissal_probability()) << "\nclamped\t" << (model.clamped() ? "yes" : "no")
      << "\nanalytic_mean\t" << format_number(m.e_runs) << "\nanalytic_std\t" << format_number(m.sigma_runs)
      << "\nanalytic_p_allout\t" << format_number(m.p_allout) << "\ntotal_probability\t"
      << format_number(m.total_probability) << '\n';
    if (a.trials == 0) return;
    const MonteCarloEstimate e = estimate_moments(model, a.trials, a.seed, a.common.threads);
    o << "trials\t" << e.trials << "\nseed\t" << a.seed << "\nmc_mean\t" << format_number(e.mean) << "\nmc_std\t"
      << format_number(e.std) << "\nmc_standard_error\t" << format_number(e.standard_error) << "\nmc_p_allout\t"
      << format_number(e.p_allout) << '\n';
  });
}

struct EmbedArgs {
  Common common;
  int level = 1;
  std::string side = "both";
  std::vector<std::string> players;
  bool binary = false;
};

void run_embed(const EmbedArgs& a, std::ostream& out) {
  if (a.level != 1 && a.level != 2) throw Error(ErrorClass::usage, "--level must be 1 or 2");
  const Corpus corpus = snapshot_load(snapshot_path(a.common));
  const RecommendConfig cfg = config_of(a.common);
  std::vector<Side> sides;
  if (a.side == "both") sides = {Side::batting, Side::bowling};
  else sides = {parse_side_option(a.side)};
  for (const auto& p : a.players) {
    const auto have = registered_sides(corpus, p);
    if (std::none_of(sides.begin(), sides.end(), [&](Side s) { return std::count(have.begin(), have.end(), s); }))
      throw not_found("player '" + p + "' has no embedding on the requested side");
  }
  emit(a.common, out, [&](std::ostream& o) {
    for (Side side : sides) {
      std::vector<PlayerId> rows;
      for (const auto& p : a.players)
        if (corpus.registry().index_of(p, side)) rows.push_back(p);
      if (!a.players.empty() && rows.empty()) continue;
      const EmbeddingSet set = EmbeddingSet::build(corpus, side, cfg.similarity, cfg.rating, a.common.threads);
      if (a.level == 1) write_level1(o, set, rows);
      else write_level2(o, set, a.binary, rows);
    }
  });
}

struct ClusterArgs {
  Common common;
  int level = 1;
  std::string side = "batting";
  std::optional<double> cutoff;
  std::optional<std::size_t> k;
};

void run_cluster(const ClusterArgs& a, std::ostream& out) {
  const Corpus corpus = snapshot_load(snapshot_path(a.common));
  const RecommendConfig cfg = config_of(a.common);
  ClusterOptions opt{a.level, a.cutoff, a.k};
  // Players below the similarity threshold are not alike, so by default
  // clusters stop merging at that distance.
  if (!opt.cutoff && !opt.k) opt.cutoff = 1.0 - cfg.similarity.l1_threshold;
  const EmbeddingSet set =
      EmbeddingSet::build(corpus, parse_side_option(a.side), cfg.similarity, cfg.rating, a.common.threads);
  const ClusterAssignment c = cluster(set, opt, cfg.similarity);
  emit(a.common, out, [&](std::ostream& o) { write_clusters(o, c); });
}

struct ReplaceArgs {
  Common common;
  std::string player, pool, side;
};

void run_replace(const ReplaceArgs& a, std::ostream& out) {
  const Corpus corpus = snapshot_load(snapshot_path(a.common));
  const RecommendConfig cfg = config_of(a.common);
  const PlayerInfo* info = corpus.info(corpus.key(a.player));
  Side side = Side::batting;
  if (!a.side.empty()) side = parse_side_option(a.side);
  else if (info && info->role) side = slot_side(*info->role);
  else if (auto have = registered_sides(corpus, a.player); !have.empty()) side = have.front();
  std::vector<PlayerId> pool;
  for (const auto& e : load_pool(a.pool)) pool.push_back(e.player);
  const EmbeddingSet set = EmbeddingSet::build(corpus, side, cfg.similarity, cfg.rating, a.common.threads);
  const ReplacementRanking r = like_for_like(set, a.player, pool, cfg.similarity);
  emit(a.common, out, [&](std::ostream& o) {
    o << "# player " << r.player << " side " << side_name(side) << "\nrank\tplayer\tsimilarity\tlevel\n";
    for (std::size_t i = 0; i < r.ranked.size(); ++i)
      o << i + 1 << '\t' << r.ranked[i].player << '\t' << format_number(r.ranked[i].similarity) << '\t'
        << r.ranked[i].level << '\n';
    for (const auto& d : r.diagnostics) o << "# " << d << '\n';
  });
}

struct RecommendArgs {
  Common common;
  std::string pool, opposition, composition, dot, format = "text";
  std::vector<std::string> locked, excluded;
  std::optional<int> squad_size;
};

void run_recommend(const RecommendArgs& a, std::ostream& out) {
  // Validate the cheap inputs before loading the snapshot.
  RecommendCall call;
  call.request.composition = Composition::parse(a.composition);
  if (a.squad_size) call.overrides["squad_size"] = *a.squad_size;
  call.request.composition.validate(a.squad_size.value_or(config_of(a.common).squad_size));
  call.request.pool = load_pool(a.pool);
  call.request.opposition = load_pool(a.opposition);
  call.request.locked = a.locked;
  call.request.excluded = a.excluded;
  const Engine engine = Engine::open(snapshot_path(a.common), config_of(a.common), a.common.threads);
  const Recommendation r = engine.recommend(call);
  if (!a.dot.empty()) {
    std::ofstream dot(a.dot);
    if (!dot) throw Error(ErrorClass::usage, "cannot write '" + a.dot + "'");
    write_dot(dot, r.graph);
  }
  emit(a.common, out, [&](std::ostream& o) {
    if (a.format == "json") o << recommendation_json(r).dump(2) << '\n';
    else write_recommendation(o, r);
  });
}

struct EvaluateArgs {
  Common common;
  std::string fixtures;
};

void run_evaluate(const EvaluateArgs& a, std::ostream& out) {
  const auto fixtures = load_fixtures(a.fixtures);
  const Corpus corpus = snapshot_load(snapshot_path(a.common));
  const TournamentEvaluation e = evaluate_tournament(corpus, fixtures, config_of(a.common), a.common.threads);
  emit(a.common, out, [&](std::ostream& o) { write_evaluation(o, e); });
}

struct ServeArgs {
  Common common;
  std::string host = "127.0.0.1";
  int port = 8080;
};

void run_serve(const ServeArgs& a, std::ostream& err) {
  ServiceConfig sc;
  sc.snapshot = snapshot_path(a.common);
  sc.host = a.host;
  sc.port = a.port;
  if (!a.common.config.empty()) sc.config_file = a.common.config;
  sc.threads = a.common.threads;
  serve(sc, err);
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Player ratings, embeddings and team recommendations from ball-by-ball data", "cricrec"};
  app.require_subcommand(1);

  IngestArgs ingest_args;
  auto* ingest_cmd = app.add_subcommand("ingest", "Build a snapshot from match files and a roster");
  ingest_cmd->add_option("--input", ingest_args.input, "Directory or zip of match files")->required();
  ingest_cmd->add_option("--roster", ingest_args.roster, "Roster file")->required();
  ingest_cmd->add_option("--out", ingest_args.out, "Snapshot to write")->required();
  ingest_cmd->add_option("--threads", ingest_args.threads, "Worker threads (0 = all cores)");

  RateArgs rate_args;
  auto* rate_cmd = app.add_subcommand("rate", "Career or per-year ratings as CSV");
  add_snapshot(rate_cmd, rate_args.common);
  rate_cmd->add_option("--player", rate_args.player, "Rate one player");
  rate_cmd->add_flag("--by-year", rate_args.by_year, "One row per calendar year with normalized series");
  rate_cmd->add_flag("--baseline", rate_args.baseline, "Add the unweighted baseline rating");
  add_config(rate_cmd, rate_args.common);
  add_out(rate_cmd, rate_args.common);

  SimulateArgs sim_args;
  auto* sim_cmd = app.add_subcommand("simulate", "Innings model moments, analytic and simulated");
  sim_cmd->add_option("--r", sim_args.r, "Runs per ball")->required();
  sim_cmd->add_option("--avg", sim_args.avg, "Runs per dismissal")->required();
  sim_cmd->add_option("--trials", sim_args.trials, "Simulated innings (0 = analytic only)");
  sim_cmd->add_option("--seed", sim_args.seed, "Random seed");
  sim_cmd->add_option("--threads", sim_args.common.threads, "Worker threads (0 = all cores)");
  add_out(sim_cmd, sim_args.common);

  EmbedArgs embed_args;
  auto* embed_cmd = app.add_subcommand("embed", "Export level 1 or level 2 embeddings");
  add_snapshot(embed_cmd, embed_args.common);
  embed_cmd->add_option("--level", embed_args.level, "1 (values) or 2 (dominance states)")->required();
  embed_cmd->add_option("--side", embed_args.side, "batting, bowling or both");
  embed_cmd->add_option("--player", embed_args.players, "Restrict to these players");
  embed_cmd->add_flag("--binary", embed_args.binary, "Level 2 as 0 = weak, 1 = otherwise on every index");
  add_config(embed_cmd, embed_args.common);
  add_out(embed_cmd, embed_args.common);

  ClusterArgs cluster_args;
  auto* cluster_cmd = app.add_subcommand("cluster", "Group similar players");
  add_snapshot(cluster_cmd, cluster_args.common);
  cluster_cmd->add_option("--level", cluster_args.level, "Embedding level");
  cluster_cmd->add_option("--side", cluster_args.side, "batting or bowling");
  auto* cutoff = cluster_cmd->add_option("--cutoff", cluster_args.cutoff, "Merge while distance <= cutoff");
  cluster_cmd->add_option("--k", cluster_args.k, "Stop at k clusters")->excludes(cutoff);
  add_config(cluster_cmd, cluster_args.common);
  add_out(cluster_cmd, cluster_args.common);

  ReplaceArgs replace_args;
  auto* replace_cmd = app.add_subcommand("replace", "Rank like-for-like replacements");
  add_snapshot(replace_cmd, replace_args.common);
  replace_cmd->add_option("--player", replace_args.player, "Player to replace")->required();
  replace_cmd->add_option("--pool", replace_args.pool, "Candidate list file")->required();
  replace_cmd->add_option("--side", replace_args.side, "batting or bowling (default from role)");
  add_config(replace_cmd, replace_args.common);
  add_out(replace_cmd, replace_args.common);

  RecommendArgs rec_args;
  auto* rec_cmd = app.add_subcommand("recommend", "Recommend a playing eleven against an opposition");
  add_snapshot(rec_cmd, rec_args.common);
  rec_cmd->add_option("--pool", rec_args.pool, "Candidate list file")->required();
  rec_cmd->add_option("--opposition", rec_args.opposition, "Opposition list file")->required();
  rec_cmd->add_option("--composition", rec_args.composition, "B,BO,WK,BAR,BOAR counts")->required();
  rec_cmd->add_option("--lock", rec_args.locked, "Player that must be selected");
  rec_cmd->add_option("--exclude", rec_args.excluded, "Player that must not be selected");
  rec_cmd->add_option("--squad-size", rec_args.squad_size, "Composition total (default 11)");
  rec_cmd->add_option("--dot", rec_args.dot, "Write the bipartite graph as Graphviz DOT");
  rec_cmd->add_option("--format", rec_args.format, "text or json")->check(CLI::IsMember({"text", "json"}));
  add_config(rec_cmd, rec_args.common);
  add_out(rec_cmd, rec_args.common);

  EvaluateArgs eval_args;
  auto* eval_cmd = app.add_subcommand("evaluate", "Score recommendations against a tournament's actual elevens");
  add_snapshot(eval_cmd, eval_args.common);
  eval_cmd->add_option("--fixtures", eval_args.fixtures, "Fixtures JSON file")->required();
  add_config(eval_cmd, eval_args.common);
  add_out(eval_cmd, eval_args.common);

  ServeArgs serve_args;
  auto* serve_cmd = app.add_subcommand("serve", "Serve ratings, embeddings and recommendations over HTTP");
  add_snapshot(serve_cmd, serve_args.common);
  serve_cmd->add_option("--host", serve_args.host, "Bind address");
  serve_cmd->add_option("--port", serve_args.port, "Port");
  add_config(serve_cmd, serve_args.common);

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) return app.exit(e, out, err);
    err << error_json(Error(ErrorClass::usage, e.what())).dump() << '\n';
    return exit_code(ErrorClass::usage);
  }

  try {
    if (*ingest_cmd) run_ingest(ingest_args, out);
    else if (*rate_cmd) run_rate(rate_args, out);
    else if (*sim_cmd) run_simulate(sim_args, out);
    else if (*embed_cmd) run_embed(embed_args, out);
    else if (*cluster_cmd) run_cluster(cluster_args, out);
    else if (*replace_cmd) run_replace(replace_args, out);
    else if (*rec_cmd) run_recommend(rec_args, out);
    else if (*eval_cmd) run_evaluate(eval_args, out);
    else if (*serve_cmd) run_serve(serve_args, err);
    return 0;
  } catch (const Error& e) {
    err << error_json(e).dump() << '\n';
    return exit_code(e.error_class());
  } catch (const std::exception& e) {
    err << error_json(Error(ErrorClass::internal, e.what())).dump() << '\n';
    return exit_code(ErrorClass::internal);
  }
}

}  // namespace cricrec
