#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "eqgb/chains.hpp"
#include "eqgb/divisibility.hpp"
#include "eqgb/errors.hpp"
#include "eqgb/gb.hpp"
#include "eqgb/models.hpp"
#include "eqgb/text.hpp"

namespace py = pybind11;
using namespace eqgb;

namespace {

GeneratorSet generator_set(const std::vector<std::string>& gens, std::uint32_t ring_width) {
  GeneratorSet g{ring_width, {}};
  for (const auto& s : gens) g.gens.push_back(parse_polynomial(s, ring_width));
  return g;
}

std::vector<std::string> texts(const GeneratorSet& g) {
  std::vector<std::string> out;
  for (const auto& f : g.gens) out.push_back(to_string(f));
  return out;
}

SimplicialComplex complex_of(const std::vector<Face>& facets, const std::vector<std::uint32_t>& dims) {
  return make_complex(static_cast<std::uint32_t>(dims.size()), facets);
}

py::object witness(const std::optional<DivisibilityWitness>& w) {
  if (!w) return py::none();
  py::dict d;
  py::list points;
  for (const auto& [a, b] : w->shift.points()) points.append(py::make_tuple(a, b));
  d["shift"] = points;
  d["cofactor"] = to_string(w->cofactor);
  return d;
}

py::dict report_dict(const StabilizationReport& r) {
  py::dict d;
  d["n0"] = r.n0 ? py::cast(*r.n0) : py::none();
  d["verified_up_to"] = r.verified_up_to;
  d["n_max"] = r.n_max;
  d["min_beyond"] = r.min_beyond;
  py::list levels;
  for (const auto& l : r.levels) {
    py::dict x;
    x["n"] = l.n;
    x["generators"] = l.generators;
    x["gb_size"] = l.gb_size;
    x["max_degree"] = l.max_degree;
    x["from_below"] = l.from_below ? py::cast(*l.from_below) : py::none();
    x["equal"] = l.equal ? py::cast(*l.equal) : py::none();
    levels.append(x);
  }
  d["levels"] = levels;
  return d;
}

StabilizationOptions stabilization_options(std::uint32_t min_beyond) {
  StabilizationOptions o;
  o.min_beyond = min_beyond;
  return o;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Shift-invariant ideals, their Groebner bases, and Markov bases of hierarchical models";

  auto& base = py::register_exception<Error>(m, "Error", PyExc_RuntimeError);
  py::register_exception<ParseError>(m, "ParseError", base.ptr());
  py::register_exception<RangeError>(m, "RangeError", base.ptr());
  py::register_exception<PreconditionError>(m, "PreconditionError", base.ptr());
  py::register_exception<ResourceLimit>(m, "ResourceLimit", base.ptr());

  m.def("normalize", [](const std::string& f) { return to_string(parse_polynomial(f)); }, py::arg("f"),
        "Parse and print in canonical form.");

  m.def("compare", [](const std::string& a, const std::string& b) {
        switch (cmp_shift(parse_monomial(a), parse_monomial(b))) {
          case Ordering::Less: return -1;
          case Ordering::Equal: return 0;
          default: return 1;
        }
      }, py::arg("a"), py::arg("b"), "Shift order: -1, 0 or 1.");

  m.def("pi_divides", [](const std::string& a, const std::string& b, bool diagonal) {
        const auto x = parse_monomial(a);
        const auto y = parse_monomial(b);
        return witness(diagonal ? pi_divides_diagonal(x, y) : pi_divides(x, y));
      }, py::arg("a"), py::arg("b"), py::arg("diagonal") = false,
      "None, or a dict with the explicit shift points and the cofactor.");

  m.def("reduce", [](const std::string& f, const std::vector<std::string>& gens, std::uint32_t ring_width, bool full) {
        const auto basis = generator_set(gens, ring_width);
        return to_string(eqgb::reduce(parse_polynomial(f, ring_width), basis, full).remainder);
      }, py::arg("f"), py::arg("gens"), py::arg("ring_width") = 1, py::arg("full") = true);

  m.def("groebner", [](const std::vector<std::string>& gens, std::uint32_t ring_width, std::uint32_t max_width,
                       std::uint32_t max_degree, std::uint32_t max_passes, bool symmetric,
                       const std::vector<std::uint32_t>& certify_at) {
        const auto input = generator_set(gens, ring_width);
        CompletionOptions opts;
        opts.symmetric = symmetric;
        GBResult res;
        {
          py::gil_scoped_release release;
          res = equivariant_buchberger(input, CompletionLimits{max_width, max_degree, max_passes}, opts);
          if (!certify_at.empty()) certify(res, input, certify_at);
        }
        py::dict d;
        d["status"] = res.status == CompletionStatus::Completed ? "Completed" : "LimitExceeded";
        d["basis"] = texts(res.basis);
        if (res.certificate) {
          py::dict cert;
          for (const auto& c : *res.certificate) cert[py::cast(c.n)] = c.equal;
          d["certificate"] = cert;
        }
        d["passes"] = res.stats.passes;
        return d;
      }, py::arg("gens"), py::arg("ring_width") = 1, py::arg("max_width") = 8, py::arg("max_degree") = 12,
      py::arg("max_passes") = 16, py::arg("symmetric") = false, py::arg("certify") = std::vector<std::uint32_t>{});

  m.def("stabilize_orbit", [](const std::vector<std::string>& gens, std::uint32_t ring_width, std::uint32_t n_max,
                              std::uint32_t min_beyond) {
        const auto chain = orbit_chain(generator_set(gens, ring_width));
        return report_dict(detect_stabilization(chain, n_max, stabilization_options(min_beyond)));
      }, py::arg("gens"), py::arg("ring_width") = 1, py::arg("n_max") = 5, py::arg("min_beyond") = 2);

  m.def("design_matrix", [](const std::vector<Face>& facets, const std::vector<std::uint32_t>& dims) {
        const auto a = eqgb::design_matrix(complex_of(facets, dims), TableShape{dims});
        std::vector<std::vector<std::int64_t>> rows(a.rows);
        for (std::size_t i = 0; i < a.rows; ++i)
          rows[i].assign(a.entries.begin() + i * a.cols, a.entries.begin() + (i + 1) * a.cols);
        return rows;
      }, py::arg("facets"), py::arg("dims"));

  m.def("markov_basis", [](const std::vector<Face>& facets, const std::vector<std::uint32_t>& dims) {
        std::vector<IntVector> out;
        for (auto& b : eqgb::markov_basis(complex_of(facets, dims), TableShape{dims})) out.push_back(std::move(b.table));
        return out;
      }, py::arg("facets"), py::arg("dims"), "Moves up to sign as flattened tables, last coordinate fastest.");

  m.def("verify_markov_fibers", [](const std::vector<Face>& facets, const std::vector<std::uint32_t>& dims,
                                   const std::vector<IntVector>& moves, std::int64_t sum_bound) {
        std::vector<Move> ms;
        for (const auto& t : moves) ms.push_back(Move{t});
        return eqgb::verify_markov_fibers(eqgb::design_matrix(complex_of(facets, dims), TableShape{dims}), ms,
                                          sum_bound);
      }, py::arg("facets"), py::arg("dims"), py::arg("moves"), py::arg("sum_bound") = 4);

  m.def("is_decomposable", [](const std::vector<Face>& facets, std::uint32_t m) {
        return eqgb::is_decomposable(make_complex(m, facets));
      }, py::arg("facets"), py::arg("m"));

  m.def("independent_set", [](const std::vector<Face>& facets, const std::vector<std::uint32_t>& dims, const Face& t,
                              std::uint32_t n_max, std::uint32_t min_beyond) {
        IndependentSetReport r;
        {
          py::gil_scoped_release release;
          r = independent_set_instance(complex_of(facets, dims), t, dims, n_max, stabilization_options(min_beyond));
        }
        py::dict d = report_dict(r.stabilization);
        py::list cont;
        for (const auto& c : r.containment) {
          py::dict x;
          x["n"] = c.n;
          x["kernel"] = c.kernel;
          x["ideal"] = c.ideal;
          cont.append(x);
        }
        d["containment"] = cont;
        d["within_bound"] = r.within_bound ? py::cast(*r.within_bound) : py::none();
        return d;
      }, py::arg("facets"), py::arg("dims"), py::arg("T"), py::arg("n_max") = 5, py::arg("min_beyond") = 2,
      "Chain obtained by growing the coordinates in T; their entries in dims are ignored.");
}
