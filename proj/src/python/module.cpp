#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <sstream>

#include "qcong/engine/characterize.hpp"
#include "qcong/engine/claims.hpp"
#include "qcong/engine/cli.hpp"
#include "qcong/engine/density.hpp"
#include "qcong/engine/identities.hpp"
#include "qcong/engine/report.hpp"
#include "qcong/etaq.hpp"
#include "qcong/hecke.hpp"
#include "qcong/qfuncs.hpp"

namespace py = pybind11;
using namespace qcong;

namespace {

py::object from_json(const nlohmann::json& j) { return py::module_::import("json").attr("loads")(j.dump()); }

py::int_ to_py(const BigInt& v) { return py::int_(py::str(v.get_str())); }

Ring ring_for(std::optional<std::uint64_t> modulus) { return modulus ? Ring::mod(*modulus) : Ring::exact(); }

py::list coefficients(const Series& s) {
    py::list out;
    for (std::size_t n = 0; n < s.order(); ++n) out.append(to_py(s.coeff(n)));
    return out;
}

py::list expand(const std::string& family, std::int64_t c, std::size_t order, std::optional<std::uint64_t> modulus) {
    return coefficients(genfun(PartitionFamily::parse(family, c), ring_for(modulus), order));
}

py::list expand_product(const std::map<std::uint64_t, std::int64_t>& factors, std::size_t order,
                        std::optional<std::uint64_t> modulus) {
    return coefficients(expand_fproduct(FProduct(factors), ring_for(modulus), order));
}

engine::Claim find_claim(const std::string& id) {
    for (auto& c : engine::load_catalog(engine::data_dir() / "claims.json")) {
        if (c.id == id) return c;
    }
    throw py::key_error("no claim with id " + id);
}

py::object verify_claim(const std::string& id, std::optional<std::size_t> depth) {
    return from_json(engine::to_json(engine::verify_claim(find_claim(id), depth)));
}

py::list claim_ids() {
    py::list out;
    for (const auto& c : engine::load_catalog(engine::data_dir() / "claims.json")) out.append(c.id);
    return out;
}

py::object verify_identity(const std::string& id, std::optional<std::size_t> order) {
    for (const auto& c : engine::identity_catalog()) {
        if (c.id == id) return from_json(engine::to_json(engine::verify_identity(c, order)));
    }
    throw py::key_error("no identity with id " + id);
}

py::list identity_ids() {
    py::list out;
    for (const auto& c : engine::identity_catalog()) out.append(c.id);
    return out;
}

py::dict eta_meta(const std::map<std::uint64_t, std::int64_t>& exponents, std::optional<std::uint64_t> level) {
    const auto e = level ? etaq::EtaQuotient(*level, exponents, etaq::LevelCheck::Relaxed)
                         : etaq::EtaQuotient::at_minimal_level(exponents);
    const auto m = etaq::form_meta(e);
    py::dict orders;
    for (const auto& [d, o] : m.cusp_orders) orders[py::int_(d)] = o.get_str();
    py::dict out;
    out["level"] = m.level;
    out["weight"] = m.weight.twice % 2 == 0 ? py::object(py::int_(m.weight.twice / 2))
                                            : py::object(py::float_(m.weight.twice / 2.0));
    out["character_discriminant"] = m.character_discriminant;
    out["sturm_bound"] = m.sturm_bound;
    out["index"] = m.index;
    out["cond24"] = py::make_tuple(m.cond24.first, m.cond24.second);
    out["holomorphic"] = m.holomorphic;
    out["cusp_orders"] = orders;
    return out;
}

py::dict characterize(std::int64_t c, std::uint64_t n_max, std::uint64_t modulus) {
    const auto v = modulus == 4 ? engine::check_characterization_mod4(c, n_max)
                 : modulus == 8 ? engine::check_characterization_mod8(c, n_max)
                                : throw py::value_error("modulus must be 4 or 8");
    py::dict out;
    out["pass"] = v.pass;
    out["first_failure"] = v.first_failure ? py::object(py::int_(*v.first_failure)) : py::none();
    out["expected"] = v.expected;
    out["actual"] = v.actual;
    return out;
}

py::object density(const std::string& family, std::int64_t c, std::uint64_t modulus, std::uint64_t X,
                   std::uint64_t stride) {
    const mpq_class d = engine::estimate_density(PartitionFamily::parse(family, c), modulus, X, stride);
    return py::module_::import("fractions").attr("Fraction")(to_py(d.get_num()), to_py(d.get_den()));
}

py::tuple run_cli(const std::vector<std::string>& args) {
    std::vector<const char*> argv{"qcong"};
    for (const auto& a : args) argv.push_back(a.c_str());
    std::ostringstream out, err;
    const int code = engine::cli_main(static_cast<int>(argv.size()), argv.data(), out, err);
    return py::make_tuple(code, out.str(), err.str());
}

}  // namespace

PYBIND11_MODULE(_core, m) {
    m.doc() = "Truncated q-series and congruence verification for generalized cubic and overcubic partitions";
    m.attr("__version__") = QCONG_VERSION;

    m.def("expand", &expand, py::arg("family"), py::arg("c"), py::arg("order"), py::arg("modulus") = py::none(),
          "Generating-function coefficients q^0 .. q^(order-1) of a_c ('a') or abar_c ('abar').");
    m.def("expand_product", &expand_product, py::arg("factors"), py::arg("order"), py::arg("modulus") = py::none(),
          "Coefficients of prod f_delta^r_delta for a {delta: r} mapping.");
    m.def("oracle_count", [](const std::string& family, std::int64_t c, std::size_t n) {
        return to_py(oracle_count(PartitionFamily::parse(family, c), n));
    }, py::arg("family"), py::arg("c"), py::arg("n"));
    m.def("claim_ids", &claim_ids);
    m.def("verify_claim", &verify_claim, py::arg("id"), py::arg("depth") = py::none());
    m.def("identity_ids", &identity_ids);
    m.def("verify_identity", &verify_identity, py::arg("id"), py::arg("order") = py::none());
    m.def("eta_meta", &eta_meta, py::arg("exponents"), py::arg("level") = py::none());
    m.def("characterize", &characterize, py::arg("c"), py::arg("n_max"), py::arg("modulus") = 4);
    m.def("density", &density, py::arg("family"), py::arg("c"), py::arg("modulus"), py::arg("X"),
          py::arg("stride") = 1);
    m.def("direct_congruence", [](const std::string& family, std::int64_t c, std::uint64_t A, std::uint64_t B,
                                  std::uint64_t u, std::size_t depth) {
        const auto v = hecke::direct_congruence(PartitionFamily::parse(family, c), A, B, u, depth);
        return py::make_tuple(v.pass, v.first_failure ? py::object(py::int_(*v.first_failure)) : py::none());
    }, py::arg("family"), py::arg("c"), py::arg("A"), py::arg("B"), py::arg("u"), py::arg("depth"));
    m.def("run_cli", &run_cli, py::arg("args"), "Run the command-line interface; returns (exit code, stdout, stderr).");

    py::register_exception<engine::CatalogError>(m, "CatalogError", PyExc_ValueError);
}
