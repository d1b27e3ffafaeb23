#pragma once

#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "etk/equivariance.hpp"
#include "etk/groups.hpp"
#include "etk/json_io.hpp"
#include "etk/named_tensors.hpp"

namespace etk {

struct ClassifyOptions {
    bool apply_g_valued_filter = false;
    unsigned long seed = 0;         ///< for the a posteriori rotation checks
    std::size_t cayley_checks = 20; ///< rotation count; 0 disables the check
};

/// A relation between a computed space and a named candidate tensor:
/// "multiple" (dim-1 space, basis = scale * candidate) or "member"
/// (candidate lies inside a higher-dimensional space).
struct NamedMatch {
    std::string slot;  ///< "torsion", "curvature" or "curvature_g_valued"
    std::string name;
    std::string relation;
    std::optional<Rational> scale;
};

struct ClassificationReport {
    GroupSpec group;
    InvariantSpaceResult torsion;
    InvariantSpaceResult curvature;
    std::optional<InvariantSpaceResult> curvature_g_valued;
    InnerTorsionSolution inner_torsion;
    std::vector<NamedMatch> named_matches;
    std::vector<std::string> flags;
};

/// For a dim-1 space: exact-proportionality matches against the candidates.
/// For larger spaces: membership reports. Every returned match is re-verified
/// coordinate by coordinate (the coordinates are the evaluations on all basis
/// argument tuples).
inline std::vector<NamedMatch> match_named(
    const Subspace& space,
    const std::vector<std::pair<std::string, TensorElement>>& candidates) {
    std::vector<NamedMatch> out;
    if (space.dim() == 0) return out;
    if (space.dim() == 1) {
        std::vector<Rational> basis(space.ambient);
        for (std::size_t j = 0; j < space.ambient; ++j) basis[j] = space.basis.at(0, j);
        for (const auto& [name, cand] : candidates) {
            if (cand.coords.size() != space.ambient || !space.contains(cand.coords)) continue;
            std::size_t lead = 0;
            while (lead < space.ambient && cand.coords[lead] == 0) ++lead;
            if (lead == space.ambient) continue;  // zero candidate
            Rational scale = basis[lead] / cand.coords[lead];
            bool exact = true;
            for (std::size_t j = 0; j < space.ambient; ++j)
                if (basis[j] != scale * cand.coords[j]) {
                    exact = false;
                    break;
                }
            if (exact) out.push_back({"", name, "multiple", scale});
        }
        return out;
    }
    for (const auto& [name, cand] : candidates)
        if (cand.coords.size() == space.ambient && space.contains(cand.coords))
            out.push_back({"", name, "member", std::nullopt});
    return out;
}

namespace detail {

/// Reads "(a,b)" out of names like "product_oo(2,3)".
inline std::pair<std::size_t, std::size_t> parse_two_params(const std::string& name) {
    auto open = name.find('(');
    auto comma = name.find(',', open);
    auto close = name.find(')', comma);
    if (open == std::string::npos || comma == std::string::npos || close == std::string::npos)
        throw std::invalid_argument("cannot read parameters from group name '" + name + "'");
    return {std::stoul(name.substr(open + 1, comma - open - 1)),
            std::stoul(name.substr(comma + 1, close - comma - 1))};
}

inline std::vector<std::pair<std::string, TensorElement>> torsion_candidates(const GroupSpec& g) {
    std::vector<std::pair<std::string, TensorElement>> out;
    if ((g.family == "so" || g.family == "o") && g.n == 3) out.emplace_back("cross", tensor_cross());
    return out;
}

inline std::vector<std::pair<std::string, TensorElement>> curvature_candidates(const GroupSpec& g) {
    std::vector<std::pair<std::string, TensorElement>> out;
    if (g.family == "so" || g.family == "o") out.emplace_back("K0", tensor_k0(g.n));
    if (g.family == "u") out.emplace_back("boldK", raise_index(tensor_bold_k(g.n / 2)));
    if (g.family == "product_oo") {
        auto [n1, n2] = parse_two_params(g.name);
        out.emplace_back("K", raise_index(tensor_k(g.n)));
        out.emplace_back("K1", raise_index(tensor_k_factor(n1, n2, 1)));
        out.emplace_back("K2", raise_index(tensor_k_factor(n1, n2, 2)));
    }
    return out;
}

inline void append_matches(std::vector<NamedMatch>& dst, const std::string& slot,
                           std::vector<NamedMatch> src) {
    for (auto& m : src) {
        m.slot = slot;
        dst.push_back(std::move(m));
    }
}

inline void verify_or_abort(bool ok, const std::string& what) {
    if (!ok) throw std::logic_error("consistency check failed: " + what);
}

inline bool fixes_space(const TensorSpec& spec, const RatMatrix& g, const Subspace& space) {
    for (std::size_t r = 0; r < space.dim(); ++r) {
        std::vector<Rational> v(space.ambient);
        for (std::size_t j = 0; j < space.ambient; ++j) v[j] = space.basis.at(r, j);
        if (apply_finite(spec, g, v) != v) return false;
    }
    return true;
}

}  // namespace detail

inline ClassificationReport classify(const GroupSpec& group, const ClassifyOptions& options = {}) {
    detail::require_valid(group);
    ClassificationReport rep;
    rep.group = group;
    rep.torsion = invariant_tensors(group, torsion_spec(group.n));
    rep.curvature = invariant_tensors(group, curvature_spec(group.n));
    rep.inner_torsion = inner_torsion_space(group);
    // For the product and unitary families the vanishing inner torsion forces
    // the curvature to take values in the Lie algebra itself; the bare
    // invariance computation is strictly weaker there (it admits K for
    // products, and a 3-dimensional space for u on R^4 and R^6), so the
    // filtered space is always reported alongside.
    if (options.apply_g_valued_filter || group.family == "product_oo" || group.family == "u")
        rep.curvature_g_valued = g_valued_filter(rep.curvature, group);

    detail::append_matches(rep.named_matches, "torsion",
                           match_named(rep.torsion.space, detail::torsion_candidates(group)));
    auto curvature_cands = detail::curvature_candidates(group);
    detail::append_matches(rep.named_matches, "curvature",
                           match_named(rep.curvature.space, curvature_cands));
    if (rep.curvature_g_valued)
        detail::append_matches(rep.named_matches, "curvature_g_valued",
                               match_named(rep.curvature_g_valued->space, curvature_cands));

    // Scalar-matrix consequences, each verified against the computed spaces.
    ScalarCensus census = scalar_matrix_census(group);
    const bool many_scalars = census.infinite_scalars || census.known_scalar_count >= 2;
    const bool very_many_scalars = census.infinite_scalars || census.known_scalar_count >= 3;
    if (many_scalars) {
        detail::verify_or_abort(rep.torsion.space.dim() == 0,
                                "multiple scalars must kill the torsion space");
        rep.flags.push_back("group contains more than one scalar matrix => torsion vanishes: verified");
    }
    if (very_many_scalars) {
        detail::verify_or_abort(rep.curvature.space.dim() == 0,
                                "more than two scalars must kill the curvature space");
        rep.flags.push_back(
            "group contains more than two scalar matrices => curvature vanishes: verified");
    }
    if (census.contains_minus_identity) {
        detail::verify_or_abort(rep.torsion.space.dim() == 0 && rep.inner_torsion.quotient_dim == 0,
                                "-1 in the group must kill torsion and inner torsion");
        rep.flags.push_back("-1 lies in the group => torsion and inner torsion vanish: verified");
    }

    // A posteriori: seeded rational rotations inside the orthogonal-type
    // families must fix every computed tensor exactly.
    const bool rotation_family = group.family == "so" || group.family == "o" ||
                                 group.family == "u" || group.family == "product_oo";
    if (rotation_family && options.cayley_checks > 0) {
        auto rotations = seeded_cayley_elements(group, options.cayley_checks, options.seed);
        for (const auto& m : rotations) {
            detail::verify_or_abort(detail::fixes_space(rep.torsion.spec, m, rep.torsion.space),
                                    "rotation must fix the torsion space");
            detail::verify_or_abort(detail::fixes_space(rep.curvature.spec, m, rep.curvature.space),
                                    "rotation must fix the curvature space");
            if (rep.curvature_g_valued)
                detail::verify_or_abort(
                    detail::fixes_space(rep.curvature_g_valued->spec, m, rep.curvature_g_valued->space),
                    "rotation must fix the filtered curvature space");
        }
        rep.flags.push_back(std::to_string(rotations.size()) + " seeded rotations (seed " +
                            std::to_string(options.seed) + ") fix all computed tensors: verified");
    }
    return rep;
}

namespace detail {

inline Json space_to_json(const InvariantSpaceResult& r) {
    Json basis = Json::array();
    for (std::size_t row = 0; row < r.space.dim(); ++row) {
        Json vec = Json::array();
        for (std::size_t j = 0; j < r.space.ambient; ++j)
            vec.push_back(rational_to_json(r.space.basis.at(row, j)));
        basis.push_back(std::move(vec));
    }
    return Json{{"dim", r.space.dim()}, {"basis", std::move(basis)}};
}

inline InvariantSpaceResult space_from_json(const Json& j, const TensorSpec& spec,
                                            const std::string& group_name,
                                            std::vector<std::string> filters) {
    RatMatrix rows(j.at("basis").size(), spec.dim());
    for (std::size_t r = 0; r < rows.rows; ++r)
        for (std::size_t c = 0; c < rows.cols; ++c)
            rows.at(r, c) = rational_from_json(j.at("basis")[r][c]);
    InvariantSpaceResult out{spec, Subspace::span_of(rows), group_name, std::move(filters)};
    if (out.space.dim() != j.at("dim").get<std::size_t>())
        throw std::invalid_argument("space_from_json: stored dim disagrees with the basis");
    return out;
}

inline std::string family_interpretation(const std::string& family) {
    if (family == "trivial")
        return "absolute parallelism: locally a Lie group model with constant connection "
               "coefficients";
    if (family == "gl") return "flat torsion-free connection: an affine manifold";
    if (family == "sl") return "affine manifold with a parallel (horizontal) volume form";
    if (family == "so")
        return "oriented Riemannian manifold of constant sectional curvature";
    if (family == "o") return "Riemannian manifold of constant sectional curvature";
    if (family == "u")
        return "Kahler manifold of constant holomorphic curvature (unitary frame bundle)";
    if (family == "diagonal") return "affine manifold carrying a web of geodesic lines";
    if (family == "block")
        return "affine manifold foliated by totally geodesic affine submanifolds";
    if (family == "product_oo")
        return "locally a product of two Riemannian manifolds, each of constant sectional "
               "curvature";
    if (family == "signs" || family == "finite")
        return "quotient of a parallelized model by a free finite symmetry action";
    return "no fixed interpretation for this group";
}

}  // namespace detail

inline Json report_to_json(const ClassificationReport& rep) {
    Json named = Json::array();
    for (const auto& m : rep.named_matches) {
        Json entry{{"slot", m.slot}, {"name", m.name}, {"relation", m.relation}};
        if (m.scale) entry["scale"] = rational_to_json(*m.scale);
        named.push_back(std::move(entry));
    }
    return Json{{"schema_version", 1},
                {"group", Json{{"name", rep.group.name},
                               {"family", rep.group.family},
                               {"n", rep.group.n}}},
                {"torsion", detail::space_to_json(rep.torsion)},
                {"curvature", detail::space_to_json(rep.curvature)},
                {"curvature_g_valued",
                 rep.curvature_g_valued ? detail::space_to_json(*rep.curvature_g_valued) : Json()},
                {"inner_torsion", Json{{"dim", rep.inner_torsion.quotient_dim}}},
                {"named_matches", std::move(named)},
                {"flags", rep.flags}};
}

/// Rebuilds a report (sufficient for rendering) from its JSON document.
inline ClassificationReport report_from_json(const Json& j) {
    if (!j.is_object() || j.value("schema_version", 0) != 1)
        throw std::invalid_argument("report_from_json: unsupported document");
    ClassificationReport rep;
    rep.group.name = j.at("group").at("name").get<std::string>();
    rep.group.family = j.at("group").at("family").get<std::string>();
    rep.group.n = j.at("group").at("n").get<std::size_t>();
    const std::size_t n = rep.group.n;
    rep.torsion = detail::space_from_json(j.at("torsion"), torsion_spec(n), rep.group.name, {});
    rep.curvature = detail::space_from_json(j.at("curvature"), curvature_spec(n), rep.group.name, {});
    if (!j.at("curvature_g_valued").is_null())
        rep.curvature_g_valued = detail::space_from_json(j.at("curvature_g_valued"),
                                                         curvature_spec(n), rep.group.name,
                                                         {"g-valued"});
    rep.inner_torsion.quotient_dim = j.at("inner_torsion").at("dim").get<std::size_t>();
    for (const auto& m : j.at("named_matches")) {
        NamedMatch nm{m.at("slot").get<std::string>(), m.at("name").get<std::string>(),
                      m.at("relation").get<std::string>(), std::nullopt};
        if (m.contains("scale")) nm.scale = rational_from_json(m.at("scale"));
        rep.named_matches.push_back(std::move(nm));
    }
    for (const auto& f : j.at("flags")) rep.flags.push_back(f.get<std::string>());
    return rep;
}

inline std::string render(const ClassificationReport& rep, const std::string& format) {
    if (format == "json") return report_to_json(rep).dump(2) + "\n";
    if (format != "text") throw std::invalid_argument("render: unknown format '" + format + "'");
    std::string out;
    out += "group " + rep.group.name + "  [family " + rep.group.family + ", ambient dimension " +
           std::to_string(rep.group.n) + "]\n";
    out += "dim T = " + std::to_string(rep.torsion.space.dim()) + "\n";
    out += "dim R = " + std::to_string(rep.curvature.space.dim()) + "\n";
    if (rep.curvature_g_valued)
        out += "dim R (g-valued) = " + std::to_string(rep.curvature_g_valued->space.dim()) + "\n";
    out += "dim J = " + std::to_string(rep.inner_torsion.quotient_dim) + "\n";
    for (const auto& m : rep.named_matches) {
        if (m.relation == "multiple")
            out += "match: " + m.slot + " basis = " + to_string(*m.scale) + " * " + m.name + "\n";
        else
            out += "match: " + m.slot + " space contains " + m.name + "\n";
    }
    out += "interpretation: " + detail::family_interpretation(rep.group.family) + "\n";
    for (const auto& f : rep.flags) out += "check: " + f + "\n";
    return out;
}

}  // namespace etk
