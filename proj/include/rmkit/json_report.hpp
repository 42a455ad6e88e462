// JSON views of the report types.  Integers that fit in 64 bits serialize as
// JSON numbers; anything larger falls back to a decimal string so reports stay
// exact.  Field order is fixed (ordered_json) to keep byte-identical output.
#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "json.hpp"

#include "rmkit/bigint.hpp"
#include "rmkit/contfrac.hpp"
#include "rmkit/functor.hpp"
#include "rmkit/io.hpp"
#include "rmkit/lattices.hpp"
#include "rmkit/matrix2z.hpp"
#include "rmkit/modgroup.hpp"
#include "rmkit/quadratic.hpp"

namespace rmkit {

using Json = nlohmann::ordered_json;

inline Json json_int(const Int& v) {
    if (v.fits_slong_p()) return Json(static_cast<std::int64_t>(v.get_si()));
    return Json(v.get_str());
}

inline Json json_rat(const Rat& v) {
    if (v.get_den() == 1) return json_int(Int(v.get_num()));
    return Json(format_rat(v));
}

inline Json json_of(const Sign& s) {
    return Json(s == Sign::real ? "real" : "imaginary");
}

inline Json json_of(const Matrix2Z& m) {
    return Json::array({json_int(m.a), json_int(m.b), json_int(m.c), json_int(m.d)});
}

inline Json json_of(const QuadraticIrrational& x) {
    Json j;
    j["p"] = json_int(x.p());
    j["q"] = json_int(x.q());
    j["r"] = json_int(x.r());
    j["D"] = json_int(x.d());
    j["sign"] = json_of(x.sign());
    j["text"] = format_quadratic(x);
    return j;
}

inline Json json_of(const QuadraticOrder& o) {
    Json j;
    j["D"] = json_int(o.D);
    j["f"] = json_int(o.f);
    j["sign"] = json_of(o.sign);
    return j;
}

inline Json json_of(const ContinuedFraction& cf) {
    Json pre = Json::array(), per = Json::array();
    for (const Int& a : cf.preperiod()) pre.push_back(json_int(a));
    for (const Int& a : cf.period()) per.push_back(json_int(a));
    Json j;
    j["preperiod"] = std::move(pre);
    j["period"] = std::move(per);
    j["text"] = format_cf(cf);
    return j;
}

namespace detail {

template <typename T, typename Fn>
Json json_opt(const std::optional<T>& v, Fn&& fn) {
    if (!v) return Json(nullptr);
    return fn(*v);
}

inline Json json_int_pair(const std::pair<Int, Int>& p) {
    return Json::array({json_int(p.first), json_int(p.second)});
}

}  // namespace detail

inline Json json_of(const PowerRecord& r) {
    Json j;
    j["k"] = r.k;
    j["pattern_plus"] = r.pattern_plus;
    j["pattern_minus"] = r.pattern_minus;
    return j;
}

inline Json json_of(const Lemma1Report& r) {
    Json j;
    j["D"] = json_int(r.D);
    j["f"] = json_int(r.f);
    j["N"] = json_int(r.N);
    j["M"] = json_of(r.M);
    j["theta"] = json_of(r.theta);
    j["x"] = json_of(r.x);
    j["xbar"] = json_of(r.xbar);
    j["fixed_set_ok"] = r.fixed_set_ok;
    j["x_in_lattice"] = r.x_in_lattice;
    j["xbar_in_lattice"] = r.xbar_in_lattice;
    j["z_x"] = detail::json_opt(r.z_x, detail::json_int_pair);
    j["z_xbar"] = detail::json_opt(r.z_xbar, detail::json_int_pair);
    j["k"] = r.k ? Json(*r.k) : Json(nullptr);
    j["k_signed"] = r.k_signed ? Json(*r.k_signed) : Json(nullptr);
    Json powers = Json::array();
    for (const PowerRecord& p : r.powers) powers.push_back(json_of(p));
    j["powers"] = std::move(powers);
    return j;
}

inline Json json_of(const Lemma4Report& r) {
    Json j;
    j["N"] = json_int(r.N);
    j["sl2_order"] = json_int(r.sl2_order);
    j["formula_order"] = json_int(r.formula_order);
    j["order_ok"] = r.order_ok;
    j["gamma1_image_order"] = json_int(r.gamma1_image_order);
    j["gamma_image_order"] = json_int(r.gamma_image_order);
    j["index"] = json_int(r.index);
    j["index_ok"] = r.index_ok;
    j["normal"] = r.normal;
    j["cover_degree"] = json_int(r.cover_degree);
    return j;
}

inline Json json_of(const NormSearchResult& r) {
    Json j;
    j["found"] = r.found;
    j["min_norm"] = r.found ? json_int(r.min_norm) : Json(nullptr);
    Json w = Json::array();
    for (const auto& mn : r.witnesses) w.push_back(detail::json_int_pair(mn));
    j["witnesses"] = std::move(w);
    return j;
}

inline Json json_of(const FunctorReport& r) {
    Json j;
    j["D"] = json_int(r.D);
    j["f"] = json_int(r.f);
    j["cm_case"] = (r.cm_case == CmCase::case1) ? 1 : 2;
    j["bound"] = json_int(r.bound);
    j["search"] = json_of(r.search);
    j["alpha0"] = detail::json_opt(r.alpha0, detail::json_int_pair);
    j["endo"] = detail::json_opt(r.endo, [](const Matrix2Z& m) { return json_of(m); });
    j["mapped"] =
        detail::json_opt(r.mapped, [](const Matrix2Z& m) { return json_of(m); });
    j["claimed"] = json_of(r.claimed);
    j["recovered_theta"] = detail::json_opt(
        r.recovered_theta, [](const QuadraticIrrational& x) { return json_of(x); });
    j["recovered"] = detail::json_opt(
        r.recovered, [](const QuadraticOrder& o) { return json_of(o); });
    j["agreement"] = r.agreement;
    j["min_is_f2D"] = r.min_is_f2D;
    j["witnesses_expected"] = r.witnesses_expected;
    j["case1_even_f"] = r.case1_even_f;
    return j;
}

}  // namespace rmkit
