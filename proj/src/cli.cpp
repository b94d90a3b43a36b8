#include "cardvote/cli.hpp"

#include <algorithm>
#include <fstream>
#include <map>
#include <optional>
#include <ostream>
#include <sstream>

#include <CLI11.hpp>

#include "cardvote/errors.hpp"
#include "cardvote/experiments.hpp"
#include "cardvote/fit.hpp"
#include "cardvote/io.hpp"
#include "cardvote/mechanism_spec.hpp"

namespace cardvote {

using nlohmann::json;

namespace {

struct Globals {
  std::uint64_t seed = 0;
  std::string format;
  std::uint64_t budget = CheckOptions{}.budget;
  std::string out;
};

// Echoed into every report so a run can be reproduced from its output.
std::string config_line(const std::vector<std::string>& args) {
  std::string line = "cardvote";
  for (const auto& a : args) line += " " + a;
  return line;
}

std::vector<int> parse_int_list(const std::string& text) {
  std::vector<int> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    try {
      std::size_t used = 0;
      out.push_back(std::stoi(item, &used));
      if (used != item.size()) throw std::invalid_argument(item);
    } catch (const std::exception&) {
      throw ParseError("expected a comma-separated integer list, got '" + text + "'");
    }
  }
  if (out.empty()) throw ParseError("empty integer list");
  return out;
}

std::map<std::string, std::string> parse_kv(std::string_view text) {
  std::map<std::string, std::string> kv;
  std::stringstream ss{std::string(text)};
  std::string item;
  while (std::getline(ss, item, ',')) {
    auto eq = item.find('=');
    if (eq == std::string::npos) throw ParseError("expected key=value in generator spec, got '" + item + "'");
    kv[item.substr(0, eq)] = item.substr(eq + 1);
  }
  return kv;
}

int kv_int(const std::map<std::string, std::string>& kv, const std::string& key, std::optional<int> fallback = {}) {
  auto it = kv.find(key);
  if (it == kv.end()) {
    if (fallback) return *fallback;
    throw ParseError("generator spec is missing '" + key + "'");
  }
  return parse_int_list(it->second).front();
}

// "negative:m=27,repeat=1", "cyclic:m=10,star=3,eps=1/1000",
// "dk:m=8,a=2,b=3,c=1,k=512", "grid:m=3,n=2,k=4,tie_free=1"
Profile profile_from_gen_spec(const std::string& spec, std::uint64_t seed) {
  auto colon = spec.find(':');
  std::string kind = spec.substr(0, colon);
  auto kv = parse_kv(colon == std::string::npos ? std::string_view{} : std::string_view(spec).substr(colon + 1));
  if (kind == "negative") return gen_negative(kv_int(kv, "m"), kv_int(kv, "repeat", 1));
  if (kind == "cyclic") {
    int m = kv_int(kv, "m");
    const long mm = m;
    Rational eps = kv.count("eps") ? parse_rational(kv["eps"]) : make_rational(1, mm * mm * mm);
    return gen_cyclic(m, kv_int(kv, "star"), eps);
  }
  if (kind == "dk")
    return gen_Dk({.m = kv_int(kv, "m"), .k = kv_int(kv, "k"), .a = kv_int(kv, "a"), .b = kv_int(kv, "b"),
                   .c = kv_int(kv, "c"), .shapes = {}},
                  seed);
  if (kind == "grid")
    return sample_grid_profile(kv_int(kv, "m"), kv_int(kv, "n"), kv_int(kv, "k"), kv_int(kv, "tie_free", 0) != 0, seed);
  throw ParseError("unknown generator '" + kind + "' in '" + spec + "'");
}

struct ProfileSource {
  std::string path;
  std::string gen;
  bool relaxed = false;

  void attach(CLI::App* cmd) {
    auto* p = cmd->add_option("--profile", path, "profile file (.json or .csv, '-' for stdin)");
    auto* g = cmd->add_option("--gen", gen, "generator spec, e.g. negative:m=27,repeat=1");
    p->excludes(g);
    cmd->add_flag("--relaxed", relaxed, "accept unnormalized voters from the profile file");
  }

  Profile load(std::uint64_t seed) const {
    if (!gen.empty()) return profile_from_gen_spec(gen, seed);
    if (path.empty()) throw ParseError("one of --profile or --gen is required");
    return load_profile(path, relaxed);
  }
};

std::string csv_header_comment(const std::string& config) { return "# " + config + "\n"; }

class Runner {
 public:
  Runner(std::vector<std::string> args, std::ostream& out, std::ostream& err)
      : args_(std::move(args)), out_(out), err_(err), config_(config_line(args_)) {}

  int run() {
    CLI::App app{"Truthful cardinal voting schemes: exact evaluation, checks and experiments", "cardvote"};
    app.require_subcommand(1);
    app.fallthrough();
    app.add_option("--seed", g_.seed, "seed for every randomized step")->capture_default_str();
    app.add_option("--format", g_.format, "output format")->check(CLI::IsMember({"json", "csv"}));
    app.add_option("--budget", g_.budget, "cap on exhaustive-search work")->capture_default_str();
    app.add_option("--out", g_.out, "write the report to this file instead of stdout");

    setup_eval(app);
    setup_gen(app);
    setup_verify(app);
    setup_experiment(app);
    setup_transforms(app);
    setup_fit(app);

    std::vector<std::string> reversed(args_.rbegin(), args_.rend());
    try {
      app.parse(reversed);
    } catch (const CLI::CallForHelp&) {
      out_ << app.help();
      return kExitOk;
    } catch (const CLI::CallForAllHelp&) {
      out_ << app.help("", CLI::AppFormatMode::All);
      return kExitOk;
    } catch (const CLI::ParseError& e) {
      err_ << "error: " << e.what() << "\n";
      return kExitError;
    }

    try {
      int code = action_();
      emit();
      return code;
    } catch (const Error& e) {
      err_ << "error: " << e.what() << "\n";
      return kExitError;
    } catch (const std::exception& e) {
      err_ << "error: " << e.what() << "\n";
      return kExitError;
    }
  }

 private:
  std::string format_or(const std::string& fallback) const { return g_.format.empty() ? fallback : g_.format; }

  void emit() {
    if (g_.out.empty()) {
      out_ << report_;
      return;
    }
    std::ofstream file(g_.out);
    if (!file) throw Error("cannot write '" + g_.out + "'");
    file << report_;
  }

  void emit_json(json doc) {
    json wrapped = {{"config", config_}};
    wrapped.update(doc);
    report_ = wrapped.dump(2) + "\n";
  }

  void emit_profile(const Profile& u) {
    if (format_or("json") == "csv") report_ = csv_header_comment(config_) + profile_to_csv(u);
    else emit_json({{"profile", profile_to_json(u)}});
  }

  // eval / ratio
  void setup_eval(CLI::App& app) {
    for (std::string name : {"eval", "ratio"}) {
      auto* cmd = app.add_subcommand(name, name == "eval" ? "distribution, welfare and ratio of a mechanism"
                                                          : "ratio of a mechanism against range voting");
      cmd->add_option("--mech", mech_spec_, "mechanism spec (rv, j1:<q>, j2:<q>, jstar, mix:..., sym:...)")->required();
      source_.attach(cmd);
      cmd->callback([this, name] { action_ = [this, name] { return do_eval(name == "ratio"); }; });
    }
  }

  int do_eval(bool ratio_only) {
    Profile u = source_.load(g_.seed);
    Mechanism mech = parse_mechanism(mech_spec_, u.m(), u.n());
    auto dist = mech.evaluate(u);
    auto report = welfare_report(dist, u);
    json notes = json::array();
    for (const auto& token : {std::string("j2:")}) {
      for (std::size_t at = mech_spec_.find(token); at != std::string::npos; at = mech_spec_.find(token, at + 1)) {
        int q = std::atoi(mech_spec_.c_str() + at + token.size());
        if (!j2q_quota_in_range(q, u.n()))
          notes.push_back("j2:" + std::to_string(q) + " quota outside floor(n/2)+1..n+1 for n = " + std::to_string(u.n()));
      }
    }

    if (format_or("json") == "csv") {
      std::string csv = csv_header_comment(config_);
      if (ratio_only) {
        csv += "mechanism,ratio,ratio_exact\n" + mech.name() + "," + decimal(report.ratio) + "," + to_string(report.ratio) + "\n";
      } else {
        csv += "candidate,prob,prob_exact,welfare,welfare_exact\n";
        for (int j = 1; j <= u.m(); ++j)
          csv += std::to_string(j) + "," + decimal(dist.prob(j)) + "," + to_string(dist.prob(j)) + "," +
                 decimal(report.welfares[j - 1]) + "," + to_string(report.welfares[j - 1]) + "\n";
      }
      report_ = csv;
      return kExitOk;
    }
    if (ratio_only) {
      emit_json({{"mechanism", mech.name()}, {"ratio", rational_json(report.ratio)}, {"notes", notes}});
      return kExitOk;
    }
    json w = json::array();
    for (const auto& x : report.welfares) w.push_back(to_string(x));
    emit_json({{"mechanism", mech.name()},
               {"m", u.m()},
               {"n", u.n()},
               {"distribution", distribution_to_json(dist)},
               {"welfare", w},
               {"rv_winner", report.rv_winner},
               {"expected_welfare", rational_json(report.expected_welfare)},
               {"rv_welfare", rational_json(report.rv_welfare)},
               {"ratio", rational_json(report.ratio)},
               {"notes", notes}});
    return kExitOk;
  }

  // gen
  void setup_gen(CLI::App& app) {
    auto* gen = app.add_subcommand("gen", "emit a generated profile");
    gen->require_subcommand(1);

    auto* neg = gen->add_subcommand("negative", "adversarial profile against ordinal truthful schemes");
    neg->add_option("--m", gen_m_)->required();
    neg->add_option("--repeat", gen_repeat_)->capture_default_str();
    neg->callback([this] { action_ = [this] { emit_profile(gen_negative(gen_m_, gen_repeat_)); return kExitOk; }; });

    auto* dk = gen->add_subcommand("dk", "structured two-block profile with class counts a, b, c");
    dk->add_option("--m", gen_m_)->required();
    dk->add_option("--n", gen_n_);
    dk->add_option("--a", gen_a_)->required();
    dk->add_option("--b", gen_b_)->required();
    dk->add_option("--c", gen_c_)->required();
    dk->add_option("--k", gen_k_)->required();
    dk->callback([this] {
      action_ = [this] {
        if (gen_n_ >= 0 && gen_n_ != gen_a_ + gen_b_ + gen_c_) throw PreconditionError("--n must equal a + b + c");
        emit_profile(gen_Dk({.m = gen_m_, .k = gen_k_, .a = gen_a_, .b = gen_b_, .c = gen_c_, .shapes = {}}, g_.seed));
        return kExitOk;
      };
    });

    auto* cyc = gen->add_subcommand("cyclic", "cyclic-order profile with one dominant value");
    cyc->add_option("--m", gen_m_)->required();
    cyc->add_option("--star", gen_star_)->required();
    cyc->add_option("--eps", gen_eps_, "default 1/m^3");
    cyc->callback([this] {
      action_ = [this] {
        const long mm = gen_m_;
        Rational eps = gen_eps_.empty() ? make_rational(1, mm * mm * mm) : parse_rational(gen_eps_);
        emit_profile(gen_cyclic(gen_m_, gen_star_, eps));
        return kExitOk;
      };
    });

    auto* grid = gen->add_subcommand("grid", "uniform random grid profile");
    grid->add_option("--m", gen_m_)->required();
    grid->add_option("--n", gen_n_)->required();
    grid->add_option("--k", gen_k_)->required();
    grid->add_flag("--tie-free", tie_free_);
    grid->callback([this] {
      action_ = [this] { emit_profile(sample_grid_profile(gen_m_, gen_n_, gen_k_, tie_free_, g_.seed)); return kExitOk; };
    });
  }

  // verify
  void setup_verify(CLI::App& app) {
    auto* verify = app.add_subcommand("verify", "exhaustive property check over a preference grid");
    verify->require_subcommand(1);
    for (std::string prop : {"truthful", "ordinal", "neutral", "anonymous"}) {
      auto* cmd = verify->add_subcommand(prop);
      cmd->add_option("--mech", mech_spec_)->required();
      cmd->add_option("--m", grid_.m)->required();
      cmd->add_option("--n", grid_.n)->required();
      cmd->add_option("--k", grid_.k)->required();
      cmd->add_flag("--tie-free", grid_.tie_free, "restrict to tie-free preferences");
      cmd->add_option("--threads", threads_)->capture_default_str();
      cmd->callback([this, prop] { action_ = [this, prop] { return do_verify(prop); }; });
    }
  }

  int do_verify(const std::string& prop) {
    Mechanism mech = parse_mechanism(mech_spec_, grid_.m, grid_.n);
    CheckOptions options{.budget = g_.budget, .threads = threads_};
    WitnessReport report = prop == "truthful" ? check_truthful(mech, grid_, options)
                           : prop == "ordinal" ? check_ordinal(mech, grid_, options)
                           : prop == "neutral" ? check_neutral(mech, grid_, options)
                                               : check_anonymous(mech, grid_, options);
    emit_json(report_to_json(report));
    return report.holds() ? kExitOk : kExitViolation;
  }

  // experiment
  void setup_experiment(CLI::App& app) {
    auto* exp = app.add_subcommand("experiment", "reproducible experiment sweeps");
    exp->require_subcommand(1);

    auto* neg = exp->add_subcommand("negative", "ratios of j1/j2 schemes on adversarial profiles");
    neg->add_option("--m", m_list_, "comma-separated m values")->required();
    neg->add_option("--qs", qs_, "'all' or comma-separated quotas")->capture_default_str();
    neg->add_option("--repeat", gen_repeat_)->capture_default_str();
    neg->callback([this] { action_ = [this] { return do_negative(); }; });

    auto* lower = exp->add_subcommand("lower", "rounded jstar ratio against the closed-form lower bound");
    add_lower_options(lower);
    auto* bounds = app.add_subcommand("bounds", "lower-bound machinery");
    bounds->require_subcommand(1);
    add_lower_options(bounds->add_subcommand("lower-experiment", "same as 'experiment lower'"));
    add_transform(bounds->add_subcommand("reduce", "same as 'reduce'"), false);
    add_transform(bounds->add_subcommand("project", "same as 'project'"), true);

    auto* cyc = exp->add_subcommand("cyclic", "jstar on unnormalized cyclic profiles");
    cyc->add_option("--m", m_list_)->required();
    cyc->add_option("--eps", gen_eps_, "default 1/m^3");
    cyc->callback([this] { action_ = [this] { return do_cyclic(); }; });

    auto* minr = exp->add_subcommand("minratio", "minimum exact ratio over a grid family");
    minr->add_option("--mech", mech_spec_)->required();
    minr->add_option("--m", grid_.m)->required();
    minr->add_option("--n", grid_.n)->required();
    minr->add_option("--k", grid_.k)->required();
    minr->add_flag("--tie-free", grid_.tie_free);
    minr->callback([this] { action_ = [this] { return do_minratio(); }; });
  }

  void add_lower_options(CLI::App* cmd) {
    cmd->add_option("--m", gen_m_)->required();
    cmd->add_option("--n", gen_n_)->required();
    cmd->add_option("--k", gen_k_)->required();
    cmd->add_option("--grid-step", grid_step_, "default ceil(n/10)");
    cmd->add_option("--seeds", seeds_, "profiles per (a, b, c), seeds --seed, --seed+1, ...")->capture_default_str();
    cmd->callback([this] { action_ = [this] { return do_lower(); }; });
  }

  int do_negative() {
    auto ms = parse_int_list(m_list_);
    std::optional<std::vector<int>> qs;
    if (qs_ != "all") qs = parse_int_list(qs_);
    auto rows = negative_experiment(ms, qs, gen_repeat_);
    std::string csv = csv_header_comment(config_) + "m,n,q,mech,ratio,ratio_exact,m_pow_neg2_3\n";
    for (const auto& r : rows) {
      double ref = std::pow(static_cast<double>(r.m), -2.0 / 3.0);
      std::ostringstream refs;
      refs.precision(12);
      refs << ref;
      csv += std::to_string(r.m) + "," + std::to_string(r.n) + "," + std::to_string(r.q) + "," + r.mech + "," +
             decimal(r.ratio) + "," + to_string(r.ratio) + "," + refs.str() + "\n";
    }
    report_ = csv;
    return kExitOk;
  }

  int do_lower() {
    int step = grid_step_ > 0 ? grid_step_ : (gen_n_ + 9) / 10;
    auto rows = lower_experiment(gen_m_, gen_n_, gen_k_, step, g_.seed, seeds_);
    std::string csv = csv_header_comment(config_) +
                      "m,n,k,seed,a,b,c,gbar,gbar_exact,bound,bound_exact,slack,slack_exact\n";
    for (const auto& r : rows) {
      Rational slack = r.gbar - r.bound;
      csv += std::to_string(r.m) + "," + std::to_string(r.n) + "," + std::to_string(r.k) + "," + std::to_string(r.seed) +
             "," + std::to_string(r.a) + "," + std::to_string(r.b) + "," + std::to_string(r.c) + "," + decimal(r.gbar) +
             "," + to_string(r.gbar) + "," + decimal(r.bound) + "," + to_string(r.bound) + "," + decimal(slack) + "," +
             to_string(slack) + "\n";
    }
    report_ = csv;
    return kExitOk;
  }

  int do_cyclic() {
    std::string csv = csv_header_comment(config_) +
                      "m,star,eps,ratio,ratio_exact,reference,reference_exact,ordinal_equivalent\n";
    for (int m : parse_int_list(m_list_)) {
      std::optional<Rational> eps;
      if (!gen_eps_.empty()) eps = parse_rational(gen_eps_);
      auto rows = cyclic_experiment(m, eps);
      Profile first = gen_cyclic(m, 1, rows.front().eps);
      for (const auto& r : rows) {
        const long mm = m;
        Rational reference = make_rational(1, mm) + Rational(mm * mm) * r.eps;
        bool equivalent = ordinal_equivalent(first, gen_cyclic(m, r.star, r.eps));
        csv += std::to_string(m) + "," + std::to_string(r.star) + "," + to_string(r.eps) + "," + decimal(r.ratio) + "," +
               to_string(r.ratio) + "," + decimal(reference) + "," + to_string(reference) + "," +
               (equivalent ? "true" : "false") + "\n";
      }
    }
    report_ = csv;
    return kExitOk;
  }

  int do_minratio() {
    Mechanism mech = parse_mechanism(mech_spec_, grid_.m, grid_.n);
    GridProfiles space(grid_);
    std::uint64_t index = 0;
    auto result = min_ratio_search(
        mech,
        [&](std::optional<Profile>& out) {
          if (index >= space.size()) return false;
          out = space.at(index++);
          return true;
        },
        g_.budget);
    emit_json({{"mechanism", mech.name()},
               {"search_space", {{"m", grid_.m}, {"n", grid_.n}, {"k", grid_.k}, {"tie_free", grid_.tie_free}}},
               {"visited", result.visited},
               {"ratio", rational_json(result.ratio)},
               {"profile", profile_to_json(*result.profile)}});
    return kExitOk;
  }

  // reduce / project
  void setup_transforms(CLI::App& app) {
    add_transform(app.add_subcommand("reduce", "slide image blocks until every voter has two blocks"), false);
    add_transform(app.add_subcommand("project", "replace voters outside the structured classes"), true);
  }

  void add_transform(CLI::App* cmd, bool project) {
    source_.attach(cmd);
    cmd->add_option("--k", gen_k_)->required();
    cmd->callback([this, project] {
      action_ = [this, project] {
        Profile u = source_.load(g_.seed);
        emit_json(project ? projection_to_json(project_to_Dk(u, gen_k_)) : reduction_to_json(reduce_to_Ck(u, gen_k_)));
        return kExitOk;
      };
    });
  }

  // fit
  void setup_fit(CLI::App& app) {
    auto* fit = app.add_subcommand("fit", "log-log slope of ratio against m from a CSV");
    fit->add_option("--in", fit_in_, "CSV file with a header row ('-' for stdin)")->required();
    fit->add_option("--x", fit_x_)->capture_default_str();
    fit->add_option("--y", fit_y_)->capture_default_str();
    fit->add_option("--where", fit_where_, "keep rows with column=value (repeatable)");
    fit->add_option("--reduce", fit_reduce_, "combine rows sharing x: none, min or max")
        ->check(CLI::IsMember({"none", "min", "max"}))
        ->capture_default_str();
    fit->callback([this] { action_ = [this] { return do_fit(); }; });
  }

  int do_fit() {
    std::stringstream buffer;
    if (fit_in_ == "-") {
      buffer << std::cin.rdbuf();
    } else {
      std::ifstream file(fit_in_);
      if (!file) throw Error("cannot open '" + fit_in_ + "'");
      buffer << file.rdbuf();
    }
    std::vector<std::string> header;
    std::vector<std::pair<double, double>> points;
    std::string line;
    auto split = [](const std::string& s) {
      std::vector<std::string> cells;
      std::stringstream ss(s);
      std::string c;
      while (std::getline(ss, c, ',')) cells.push_back(c);
      return cells;
    };
    std::vector<std::pair<std::string, std::string>> filters;
    for (const auto& w : fit_where_) {
      auto eq = w.find('=');
      if (eq == std::string::npos) throw ParseError("--where expects column=value, got '" + w + "'");
      filters.emplace_back(w.substr(0, eq), w.substr(eq + 1));
    }
    auto column = [&](const std::string& name) {
      auto it = std::find(header.begin(), header.end(), name);
      if (it == header.end()) throw DataError("column '" + name + "' not in CSV header");
      return static_cast<std::size_t>(it - header.begin());
    };
    while (std::getline(buffer, line)) {
      if (line.empty() || line[0] == '#') continue;
      if (header.empty()) {
        header = split(line);
        continue;
      }
      auto cells = split(line);
      bool keep = true;
      for (const auto& [col, val] : filters) keep = keep && cells.at(column(col)) == val;
      if (!keep) continue;
      double x = to_double(parse_rational(cells.at(column(fit_x_))));
      double y = to_double(parse_rational(cells.at(column(fit_y_))));
      points.emplace_back(x, y);
    }
    if (fit_reduce_ != "none") {
      std::map<double, double> combined;
      for (auto [x, y] : points) {
        auto [it, fresh] = combined.emplace(x, y);
        if (!fresh) it->second = fit_reduce_ == "min" ? std::min(it->second, y) : std::max(it->second, y);
      }
      points.assign(combined.begin(), combined.end());
    }
    auto fit = fit_slope(points);
    emit_json({{"points", points.size()}, {"slope", fit.slope}, {"intercept", fit.intercept}, {"residual", fit.residual}});
    return kExitOk;
  }

  std::vector<std::string> args_;
  std::ostream& out_;
  std::ostream& err_;
  std::string config_;
  Globals g_;
  std::function<int()> action_;
  std::string report_;

  std::string mech_spec_;
  ProfileSource source_;
  Grid grid_;
  int threads_ = 1;
  bool tie_free_ = false;
  int gen_m_ = 0, gen_n_ = -1, gen_k_ = 0, gen_a_ = 0, gen_b_ = 0, gen_c_ = 0, gen_star_ = 1, gen_repeat_ = 1;
  std::string gen_eps_;
  std::string m_list_;
  std::string qs_ = "all";
  int grid_step_ = 0;
  int seeds_ = 1;
  std::string fit_in_, fit_x_ = "m", fit_y_ = "ratio", fit_reduce_ = "none";
  std::vector<std::string> fit_where_;
};

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  return Runner(args, out, err).run();
}

}  // namespace cardvote
