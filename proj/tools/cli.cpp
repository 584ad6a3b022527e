#include "cli.hpp"

#include <algorithm>
#include <fstream>
#include <functional>
#include <iomanip>
#include <numeric>
#include <optional>
#include <ostream>
#include <random>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "eqgb/chains.hpp"
#include "eqgb/divisibility.hpp"
#include "eqgb/errors.hpp"
#include "eqgb/gb.hpp"
#include "eqgb/models.hpp"
#include "eqgb/text.hpp"

namespace eqgb::cli {
namespace {

using Json = nlohmann::ordered_json;

Json read_json(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot read " + path);
  try {
    return Json::parse(in);
  } catch (const Json::parse_error& e) {
    throw Error(path + ": " + e.what());
  }
}

GeneratorSet read_gens(const std::string& path, std::uint32_t ring) {
  const Json j = read_json(path);
  if (!j.contains("generators") || !j["generators"].is_array()) throw Error(path + ": missing generators array");
  GeneratorSet out;
  out.ring_width = ring != 0 ? ring : j.value("ring_width", 0u);
  for (const auto& s : j["generators"]) out.gens.push_back(parse_polynomial(s.get<std::string>(), out.ring_width));
  if (out.ring_width == 0) {
    out.ring_width = 1;
    for (const auto& g : out.gens) out.ring_width = std::max(out.ring_width, g.max_row());
  }
  return out;
}

struct Model {
  SimplicialComplex complex;
  std::vector<std::uint32_t> dims;
};

Model read_model(const std::string& path) {
  const Json j = read_json(path);
  for (const char* key : {"m", "facets", "dims"})
    if (!j.contains(key)) throw Error(path + ": missing key " + key);
  Model m;
  const auto ground = j.at("m").get<std::uint32_t>();
  m.complex = make_complex(ground, j.at("facets").get<std::vector<Face>>());
  m.dims = j.at("dims").get<std::vector<std::uint32_t>>();
  if (m.dims.size() != ground) throw Error(path + ": dims needs " + std::to_string(ground) + " entries");
  return m;
}

Json poly_list(const std::vector<Polynomial>& ps) {
  Json a = Json::array();
  for (const auto& p : ps) a.push_back(to_string(p));
  return a;
}

std::string join(const std::vector<std::int64_t>& xs, const char* sep) {
  std::ostringstream os;
  for (std::size_t i = 0; i < xs.size(); ++i) os << (i ? sep : "") << xs[i];
  return os.str();
}

std::string signed_entry(std::int64_t x) {
  std::ostringstream os;
  if (x > 0) os << '+';
  if (x == 0) os << ' ';
  os << x;
  return os.str();
}

// Slices over the last two coordinates, labelled by the leading ones.
void print_table(std::ostream& out, const IntVector& t, const TableShape& shape) {
  const std::size_t m = shape.dims.size();
  const std::size_t cols = m >= 1 ? shape.dims[m - 1] : 1;
  const std::size_t rows = m >= 2 ? shape.dims[m - 2] : 1;
  const std::size_t slice = rows * cols;
  for (std::size_t base = 0; base < t.size(); base += slice) {
    if (m > 2) {
      auto idx = unflatten(shape, base);
      out << "  [";
      for (std::size_t i = 0; i + 2 < m; ++i) out << (i ? "," : "") << idx[i];
      out << ",*,*]\n";
    }
    for (std::size_t r = 0; r < rows; ++r) {
      out << "   ";
      for (std::size_t c = 0; c < cols; ++c) out << ' ' << std::setw(3) << signed_entry(t[base + r * cols + c]);
      out << '\n';
    }
  }
}

Json report_json(const StabilizationReport& r) {
  Json j;
  j["n0"] = r.n0 ? Json(*r.n0) : Json(nullptr);
  j["stabilized"] = r.n0.has_value();
  j["n_max"] = r.n_max;
  j["min_beyond"] = r.min_beyond;
  j["verified_up_to"] = r.verified_up_to;
  Json levels = Json::array();
  for (const auto& l : r.levels) {
    Json e;
    e["n"] = l.n;
    e["generators"] = l.generators;
    e["gb_size"] = l.gb_size;
    e["max_degree"] = l.max_degree;
    e["from_below"] = l.from_below ? Json(*l.from_below) : Json(nullptr);
    e["equal"] = l.equal ? Json(*l.equal) : Json(nullptr);
    levels.push_back(e);
  }
  j["levels"] = levels;
  return j;
}

void print_report(std::ostream& out, const StabilizationReport& r) {
  if (r.n0) {
    out << "stabilized: n0 = " << *r.n0 << ", verified up to n = " << r.verified_up_to << '\n';
  } else {
    out << "not stabilized within horizon n_max = " << r.n_max << " (needs " << r.min_beyond
        << " verified levels beyond n0)\n";
  }
  for (const auto& l : r.levels) {
    out << "  n=" << l.n << " generators=" << l.generators << " gb=" << l.gb_size << " max_degree=" << l.max_degree;
    if (l.from_below) out << " from_below=" << (*l.from_below ? "yes" : "no");
    if (l.equal) out << " equal=" << (*l.equal ? "yes" : "no");
    out << '\n';
  }
}

// Property checks ----------------------------------------------------------

struct Rng {
  std::mt19937_64 gen;
  explicit Rng(std::uint64_t seed) : gen(seed) {}
  std::uint32_t uniform(std::uint32_t lo, std::uint32_t hi) {
    return std::uniform_int_distribution<std::uint32_t>(lo, hi)(gen);
  }
  Monomial monomial(std::uint32_t rows, std::uint32_t cols) {
    std::vector<Monomial::Factor> fs;
    const auto k = uniform(0, 4);
    for (std::uint32_t i = 0; i < k; ++i) {
      fs.emplace_back(VarIndex{uniform(1, rows), uniform(1, cols)}, uniform(1, 3));
    }
    return Monomial(std::move(fs));
  }
  ShiftMap shift(std::uint32_t width, std::uint32_t range) {
    std::vector<std::uint32_t> pool(range);
    std::iota(pool.begin(), pool.end(), 1u);
    std::shuffle(pool.begin(), pool.end(), gen);
    pool.resize(width);
    std::sort(pool.begin(), pool.end());
    return ShiftMap::from_images(pool);
  }
};

bool brute_divides(const Monomial& a, const Monomial& b) {
  const std::uint32_t wa = a.max_col();
  const std::uint32_t wb = b.max_col();
  if (wa == 0) return true;
  if (wa > wb) return false;
  std::vector<std::uint32_t> img;
  std::function<bool(std::uint32_t)> rec = [&](std::uint32_t start) {
    if (img.size() == wa) return apply_shift(ShiftMap::from_images(img), a).divides(b);
    for (std::uint32_t v = start; v + (wa - img.size()) <= wb + 1; ++v) {
      img.push_back(v);
      if (rec(v + 1)) return true;
      img.pop_back();
    }
    return false;
  };
  return rec(1);
}

int property_check(std::uint64_t seed, std::size_t trials, bool json, std::ostream& out) {
  Rng rng(seed);
  struct Result {
    std::string name;
    std::size_t cases = 0;
    std::size_t failures = 0;
  };
  std::vector<Result> results;
  auto check = [&](const std::string& name, const std::function<bool()>& body) {
    Result r{name};
    for (std::size_t i = 0; i < trials; ++i) {
      ++r.cases;
      if (!body()) ++r.failures;
    }
    results.push_back(r);
  };
  check("order_total", [&] {
    const std::uint32_t rows = rng.uniform(1, 3);
    auto a = rng.monomial(rows, 8), b = rng.monomial(rows, 8), c = rng.monomial(rows, 8);
    const auto ab = cmp_shift(a, b), ba = cmp_shift(b, a);
    if ((ab == Ordering::Equal) != (a == b)) return false;
    if ((ab == Ordering::Less) != (ba == Ordering::Greater)) return false;
    if (ab == Ordering::Less && cmp_shift(b, c) == Ordering::Less && cmp_shift(a, c) != Ordering::Less) return false;
    return true;
  });
  check("order_shift_compatible", [&] {
    const std::uint32_t rows = rng.uniform(1, 3);
    auto q = rng.monomial(rows, 8), q1 = rng.monomial(rows, 8), q2 = rng.monomial(rows, 8);
    if (cmp_shift(q1, q2) == Ordering::Greater) std::swap(q1, q2);
    if (q1 == q2) return true;
    const auto p = rng.shift(8, 12);
    return cmp_shift(q * apply_shift(p, q1), q * apply_shift(p, q2)) == Ordering::Less;
  });
  check("order_monoid_bounds", [&] {
    const std::uint32_t rows = rng.uniform(1, 3);
    auto q1 = rng.monomial(rows, 8), q2 = rng.monomial(rows, 8);
    const auto p = rng.shift(8, 12);
    return cmp_shift(q2, q1 * q2) != Ordering::Greater && cmp_shift(Monomial(), q1) != Ordering::Greater &&
           cmp_shift(q1, apply_shift(p, q1)) != Ordering::Greater;
  });
  check("divides_oracle", [&] {
    const std::uint32_t rows = rng.uniform(1, 3);
    auto a = rng.monomial(rows, 8), b = rng.monomial(rows, 8);
    if (rng.uniform(0, 1) == 1) b = apply_shift(rng.shift(8, 8), a) * rng.monomial(rows, 8);
    auto w = pi_divides(a, b);
    if (w.has_value() != brute_divides(a, b)) return false;
    return !w || w->cofactor * apply_shift(w->shift, a) == b;
  });
  check("compress_roundtrip", [&] {
    const std::uint32_t rows = rng.uniform(1, 3);
    const Monomial m1 = rng.monomial(rows, 8);
    const Monomial m2 = rng.monomial(rows, 8);
    const Rational c1 = rng.uniform(1, 5);
    const auto num = rng.uniform(1, 5);
    Rational c2(num, rng.uniform(1, 4));
    c2.canonicalize();
    Polynomial f = Polynomial(m1, c1) - Polynomial(m2, c2);
    if (f.is_zero()) return true;
    auto [g, p] = compress(f);
    return apply_shift(p, g) == f && g.max_col() == f.columns().size();
  });
  check("text_roundtrip", [&] {
    const std::uint32_t rows = rng.uniform(1, 3);
    const Monomial m1 = rng.monomial(rows, 8);
    const Monomial m2 = rng.monomial(rows, 8);
    const auto num = rng.uniform(1, 9);
    Rational c1(num, rng.uniform(1, 9));
    c1.canonicalize();
    const Rational c2 = rng.uniform(1, 5);
    Polynomial f = Polynomial(m1, c1) - Polynomial(m2, c2);
    return parse_polynomial(to_string(f)) == f;
  });

  bool ok = true;
  Json j;
  j["seed"] = seed;
  Json arr = Json::array();
  for (const auto& r : results) {
    ok = ok && r.failures == 0;
    if (json) {
      Json e;
      e["property"] = r.name;
      e["cases"] = r.cases;
      e["failures"] = r.failures;
      arr.push_back(e);
    } else {
      out << r.name << ": " << (r.failures == 0 ? "ok" : "FAILED") << " (" << r.cases << " cases, " << r.failures
          << " failures)\n";
    }
  }
  if (json) {
    j["results"] = arr;
    j["ok"] = ok;
    out << j.dump(2) << '\n';
  }
  return ok ? 0 : 1;
}

std::vector<std::uint32_t> parse_list(const std::string& s) {
  std::vector<std::uint32_t> out;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (item.empty()) continue;
    try {
      out.push_back(static_cast<std::uint32_t>(std::stoul(item)));
    } catch (const std::exception&) {
      throw Error("not a number: '" + item + "'");
    }
  }
  return out;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Gröbner bases and chains for shift-invariant ideals"};
  app.require_subcommand(1);
  bool json = false;
  app.add_flag("--json", json, "Machine-readable output");

  // divides
  std::string a_text, b_text;
  bool diagonal = false;
  auto* divides = app.add_subcommand("divides", "Decide Pi-divisibility of two monomials");
  divides->add_option("A", a_text)->required();
  divides->add_option("B", b_text)->required();
  divides->add_flag("--diagonal", diagonal, "Shift row and column indices together");

  // reduce
  std::string f_text, gens_path;
  std::uint32_t ring = 0;
  bool head_only = false;
  auto* reduce_cmd = app.add_subcommand("reduce", "Reduce a polynomial modulo all shifts of a generator set");
  reduce_cmd->add_option("F", f_text)->required();
  reduce_cmd->add_option("--gens", gens_path, "JSON file with a generators array")->required();
  reduce_cmd->add_option("--ring", ring, "Number of rows");
  reduce_cmd->add_flag("--head-only", head_only, "Stop once the leading term is irreducible");

  // gb
  CompletionLimits limits;
  std::string certify_list;
  bool symmetric = false;
  auto* gb = app.add_subcommand("gb", "Equivariant Buchberger completion");
  gb->add_option("--ring", ring, "Number of rows");
  gb->add_option("--gens", gens_path, "JSON file with a generators array")->required();
  gb->add_option("--max-width", limits.max_width)->check(CLI::PositiveNumber);
  gb->add_option("--max-degree", limits.max_degree)->check(CLI::PositiveNumber);
  gb->add_option("--max-passes", limits.max_passes)->check(CLI::PositiveNumber);
  gb->add_option("--certify", certify_list, "Comma-separated truncation sizes to check against");
  gb->add_flag("--symmetric", symmetric, "Treat the ideal as invariant under column permutations");

  // chain-stabilize
  std::string model_path, t_list;
  std::uint32_t n_max = 5;
  std::uint32_t min_beyond = 2;
  bool orbit = false;
  auto* chain = app.add_subcommand("chain-stabilize", "Find where an invariant chain stabilizes");
  chain->add_option("--model", model_path, "Model JSON file; the last coordinate grows");
  chain->add_option("--gens", gens_path, "Generators; the chain of their orbits");
  chain->add_flag("--orbit", orbit, "Use the orbit chain of --gens");
  chain->add_option("--ring", ring, "Number of rows for --gens");
  chain->add_option("--T", t_list, "Growing coordinates for --model (default: the last)");
  chain->add_option("--n-max", n_max)->check(CLI::PositiveNumber);
  chain->add_option("--min-beyond", min_beyond);

  // model-matrix
  auto* matrix = app.add_subcommand("model-matrix", "Print the design matrix as CSV");
  matrix->add_option("--model", model_path)->required();

  // markov
  bool verify = false;
  std::int64_t sum_bound = 4;
  auto* markov = app.add_subcommand("markov", "Minimal Markov basis of a hierarchical model");
  markov->add_option("--model", model_path)->required();
  markov->add_flag("--verify", verify, "Check fiber connectivity");
  markov->add_option("--sum-bound", sum_bound, "Largest entry sum of checked fibers")->check(CLI::NonNegativeNumber);

  // independent-set
  auto* indep = app.add_subcommand("independent-set", "Chain obtained by growing an independent set of coordinates");
  indep->add_option("--model", model_path)->required();
  indep->add_option("--T", t_list)->required();
  indep->add_option("--n-max", n_max)->check(CLI::PositiveNumber);
  indep->add_option("--min-beyond", min_beyond);

  // property-check
  std::uint64_t seed = 1;
  std::size_t trials = 1000;
  auto* props = app.add_subcommand("property-check", "Randomized checks of the order and divisibility laws");
  props->add_option("--seed", seed);
  props->add_option("--trials", trials)->check(CLI::PositiveNumber);

  std::vector<std::string> argv_store{"eqgb"};
  argv_store.insert(argv_store.end(), args.begin(), args.end());
  std::vector<char*> argv;
  for (auto& s : argv_store) argv.push_back(s.data());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? 0 : 1;
  }

  try {
    if (divides->parsed()) {
      const Monomial a = parse_monomial(a_text);
      const Monomial b = parse_monomial(b_text);
      const auto w = diagonal ? pi_divides_diagonal(a, b) : pi_divides(a, b);
      if (json) {
        Json j;
        j["divides"] = w.has_value();
        if (w) {
          j["pi"] = to_string(w->shift);
          j["cofactor"] = to_string(w->cofactor);
        }
        out << j.dump(2) << '\n';
      } else if (w) {
        out << "pi: " << to_string(w->shift) << "; cofactor: " << to_string(w->cofactor) << '\n';
      } else {
        out << "NO\n";
      }
      return 0;
    }

    if (reduce_cmd->parsed()) {
      const GeneratorSet gens = read_gens(gens_path, ring);
      const Polynomial f = parse_polynomial(f_text, gens.ring_width);
      const ReductionTrace t = reduce(f, gens, !head_only);
      if (json) {
        Json j;
        j["remainder"] = to_string(t.remainder);
        Json steps = Json::array();
        for (const auto& s : t.steps) {
          Json e;
          e["coeff"] = to_string(s.coeff);
          e["cofactor"] = to_string(s.cofactor);
          e["pi"] = to_string(s.shift);
          e["generator"] = s.gen_index;
          steps.push_back(e);
        }
        j["steps"] = steps;
        out << j.dump(2) << '\n';
      } else {
        out << "remainder: " << to_string(t.remainder) << '\n';
        for (const auto& s : t.steps) {
          out << "  " << to_string(s.coeff) << " * " << to_string(s.cofactor) << " * pi(g" << s.gen_index + 1
              << "), pi: " << to_string(s.shift) << '\n';
        }
      }
      return 0;
    }

    if (gb->parsed()) {
      const GeneratorSet input = read_gens(gens_path, ring);
      CompletionOptions opts;
      opts.symmetric = symmetric;
      GBResult result = equivariant_buchberger(input, limits, opts);
      const bool completed = result.status == CompletionStatus::Completed;
      const auto ns = parse_list(certify_list);
      if (completed && !ns.empty()) certify(result, input, ns);
      bool certified = true;
      if (result.certificate) {
        for (const auto& c : *result.certificate) certified = certified && c.equal;
      }
      if (json) {
        Json j;
        j["ring_width"] = input.ring_width;
        j["generators"] = poly_list(input.gens);
        j["status"] = completed ? "Completed" : "LimitExceeded";
        j["basis"] = poly_list(result.basis.gens);
        if (result.certificate) {
          Json c = Json::array();
          for (const auto& e : *result.certificate) c.push_back(Json{{"n", e.n}, {"equal", e.equal}});
          j["certificate"] = c;
        }
        j["passes"] = result.stats.passes;
        out << j.dump(2) << '\n';
      } else {
        out << "status: " << (completed ? "Completed" : "LimitExceeded") << '\n';
        for (const auto& g : result.basis.gens) out << to_string(g) << '\n';
        if (result.certificate) {
          for (const auto& e : *result.certificate) {
            out << "certificate n=" << e.n << ": " << (e.equal ? "equal" : "DIFFERENT") << '\n';
          }
        }
      }
      if (!completed) return 2;
      if (!certified) {
        err << "error: truncation check failed\n";
        return 1;
      }
      return 0;
    }

    if (chain->parsed()) {
      StabilizationOptions opts;
      opts.min_beyond = min_beyond;
      Chain c;
      if (!model_path.empty()) {
        const Model m = read_model(model_path);
        Face t = t_list.empty() ? Face{m.complex.m} : parse_list(t_list);
        c = independent_set_chain(m.complex, t, m.dims);
      } else if (orbit && !gens_path.empty()) {
        c = orbit_chain(read_gens(gens_path, ring));
      } else {
        throw Error("chain-stabilize needs --model FILE or --gens FILE --orbit");
      }
      const StabilizationReport r = detect_stabilization(c, n_max, opts);
      if (json) {
        out << report_json(r).dump(2) << '\n';
      } else {
        print_report(out, r);
      }
      return 0;
    }

    if (matrix->parsed()) {
      const Model m = read_model(model_path);
      const DesignMatrix a = design_matrix(m.complex, TableShape{m.dims});
      if (json) {
        Json j;
        j["rows"] = a.rows;
        j["cols"] = a.cols;
        Json rows = Json::array();
        for (std::size_t i = 0; i < a.rows; ++i) {
          rows.push_back(std::vector<std::int64_t>(a.entries.begin() + i * a.cols, a.entries.begin() + (i + 1) * a.cols));
        }
        j["entries"] = rows;
        out << j.dump(2) << '\n';
      } else {
        for (std::size_t i = 0; i < a.rows; ++i) {
          out << join(std::vector<std::int64_t>(a.entries.begin() + i * a.cols, a.entries.begin() + (i + 1) * a.cols), ",")
              << '\n';
        }
      }
      return 0;
    }

    if (markov->parsed()) {
      const Model m = read_model(model_path);
      const TableShape shape{m.dims};
      const DesignMatrix a = design_matrix(m.complex, shape);
      const auto moves = markov_basis(a);
      std::optional<bool> verified;
      std::string witness;
      if (verify) verified = verify_markov_fibers(a, moves, sum_bound, &witness);
      if (json) {
        Json j;
        j["dims"] = m.dims;
        j["moves_up_to_sign"] = moves.size();
        j["moves_with_signs"] = 2 * moves.size();
        Json arr = Json::array();
        for (const auto& b : moves) arr.push_back(b.table);
        j["moves"] = arr;
        if (verified) {
          j["sum_bound"] = sum_bound;
          j["fibers_connected"] = *verified;
        }
        out << j.dump(2) << '\n';
      } else {
        out << "moves: " << moves.size() << " up to sign, " << 2 * moves.size() << " with signs\n";
        for (std::size_t i = 0; i < moves.size(); ++i) {
          out << "move " << i + 1 << " (degree " << move_degree(moves[i]) << ")\n";
          print_table(out, moves[i].table, shape);
        }
        if (verified) {
          out << "fibers up to entry sum " << sum_bound << ": " << (*verified ? "connected" : "DISCONNECTED") << '\n';
        }
      }
      if (verified && !*verified) {
        err << "error: " << witness << '\n';
        return 1;
      }
      return 0;
    }

    if (indep->parsed()) {
      const Model m = read_model(model_path);
      StabilizationOptions opts;
      opts.min_beyond = min_beyond;
      const IndependentSetReport r = independent_set_instance(m.complex, parse_list(t_list), m.dims, n_max, opts);
      bool contained = true;
      for (const auto& c : r.containment) contained = contained && c.kernel && c.ideal;
      if (json) {
        Json j = report_json(r.stabilization);
        Json cs = Json::array();
        for (const auto& c : r.containment) cs.push_back(Json{{"n", c.n}, {"kernel", c.kernel}, {"ideal", c.ideal}});
        j["containment"] = cs;
        j["within_bound"] = r.within_bound ? Json(*r.within_bound) : Json(nullptr);
        out << j.dump(2) << '\n';
      } else {
        print_report(out, r.stabilization);
        out << "envelope containment: " << (contained ? "holds" : "FAILS") << " for n = 1.." << n_max << '\n';
        if (r.within_bound) out << "n0 <= 2 #T: " << (*r.within_bound ? "yes" : "no") << '\n';
      }
      if (!contained) {
        err << "error: envelope containment failed\n";
        return 1;
      }
      return 0;
    }

    if (props->parsed()) return property_check(seed, trials, json, out);
  } catch (const ResourceLimit& e) {
    err << "limit: " << e.what() << '\n';
    return 2;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return 1;
  }
  return 1;
}

}  // namespace eqgb::cli
