#pragma once

#include <CLI11.hpp>

#include <cstdlib>
#include <fstream>
#include <optional>
#include <ostream>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "etk/classify.hpp"
#include "etk/parallelism.hpp"

namespace etk {
namespace detail {

/// Domain failure: unreadable files, invalid groups, violated identities,
/// negative verdicts. Mapped to exit code 1.
struct CliFailure : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Bad command composition beyond what the parser can see (e.g. a missing
/// group source or an unknown family name). Mapped to exit code 2.
struct CliUsage : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Ambient-dimension cap, overridable through the ETK_MAX_N variable.
inline std::size_t max_ambient() {
    const char* s = std::getenv("ETK_MAX_N");
    if (s == nullptr || *s == '\0') return 6;
    char* end = nullptr;
    const unsigned long v = std::strtoul(s, &end, 10);
    if (end == nullptr || *end != '\0' || v == 0)
        throw CliFailure("ETK_MAX_N must be a positive integer, got '" + std::string(s) + "'");
    return v;
}

inline void require_within_cap(std::size_t n) {
    const std::size_t cap = max_ambient();
    if (n > cap)
        throw CliFailure("ambient dimension " + std::to_string(n) + " exceeds the cap " +
                         std::to_string(cap) + " (raise ETK_MAX_N to allow larger systems)");
}

inline Json read_json_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw CliFailure("cannot read file '" + path + "'");
    try {
        return Json::parse(in);
    } catch (const Json::parse_error& e) {
        throw CliFailure("file '" + path + "' is not valid JSON: " + e.what());
    }
}

/// One group source per invocation: a builtin family with parameters, or a
/// group file. Parameter-shape problems on the builtin path are usage errors;
/// file problems are domain failures.
struct GroupSource {
    std::string family;
    std::optional<std::size_t> n, n1, n2, s;
    std::string file;

    GroupSpec load() const {
        if (!file.empty()) return group_from_file_json(read_json_file(file));
        if (family.empty()) throw CliUsage("provide a group: --group FAMILY or --group-file PATH");
        try {
            return builtin_group(family, BuiltinParams{n, n1, n2, s});
        } catch (const std::invalid_argument& e) {
            throw CliUsage(e.what());
        }
    }
};

inline bool all_zero(const std::vector<Rational>& v) {
    for (const auto& x : v)
        if (sgn(x) != 0) return false;
    return true;
}

inline void require_declared_symmetries(const TensorElement& t) {
    if (t.spec.skew12 && !all_zero(skew12_residual(t.spec, t.coords)))
        throw CliFailure("tensor coordinates violate the declared skew-1-2 symmetry");
    if (t.spec.skew34 && !all_zero(skew34_residual(t.spec, t.coords)))
        throw CliFailure("tensor coordinates violate the declared skew-3-4 symmetry");
    if (t.spec.bianchi && !all_zero(bianchi_sum(t.spec, t.coords)))
        throw CliFailure("tensor coordinates violate the declared Bianchi identity");
}

/// Strict invariance for the slot valences; invariance modulo the algebra for
/// inner-torsion maps (their geometric content lives in gl(R^n)/g). On
/// failure, `witness` names the first offending generator.
inline bool tensor_invariant(const GroupSpec& g, const TensorElement& t, std::string& witness) {
    if (t.spec.n != g.n)
        throw CliFailure("tensor lives on R^" + std::to_string(t.spec.n) + " but the group acts on R^" +
                         std::to_string(g.n));
    if (t.spec.valence == Valence::inner_torsion) {
        const Subspace modulo = inner_torsion_space(g).modulo;
        for (std::size_t i = 0; i < g.algebra.size(); ++i)
            if (!modulo.contains(apply_infinitesimal(t.spec, g.algebra[i], t.coords))) {
                witness = "algebra generator #" + std::to_string(i + 1) + " moves it (mod g)";
                return false;
            }
        for (std::size_t i = 0; i < g.reps.size(); ++i) {
            std::vector<Rational> moved = apply_finite(t.spec, g.reps[i], t.coords);
            for (std::size_t j = 0; j < moved.size(); ++j) moved[j] -= t.coords[j];
            if (!modulo.contains(moved)) {
                witness = "component representative #" + std::to_string(i + 1) + " moves it (mod g)";
                return false;
            }
        }
        return true;
    }
    for (std::size_t i = 0; i < g.algebra.size(); ++i)
        if (!all_zero(apply_infinitesimal(t.spec, g.algebra[i], t.coords))) {
            witness = "algebra generator #" + std::to_string(i + 1) + " moves it";
            return false;
        }
    for (std::size_t i = 0; i < g.reps.size(); ++i)
        if (apply_finite(t.spec, g.reps[i], t.coords) != t.coords) {
            witness = "component representative #" + std::to_string(i + 1) + " moves it";
            return false;
        }
    return true;
}

inline void emit(const std::string& doc, const std::string& out_path, std::ostream& out) {
    if (out_path.empty()) {
        out << doc;
        return;
    }
    std::ofstream f(out_path);
    if (!f) throw CliFailure("cannot write to '" + out_path + "'");
    f << doc;
    if (!f.good()) throw CliFailure("write to '" + out_path + "' failed");
}

/// Catalog rows, in fixed order. The finite family carries user matrices and
/// is therefore only reachable through a group file.
struct CatalogRow {
    std::string family;
    std::string parameters;
    std::optional<GroupSpec> example;
};

inline std::vector<CatalogRow> catalog_rows() {
    std::vector<CatalogRow> rows;
    rows.push_back({"trivial", "--n", group_trivial(3)});
    rows.push_back({"gl", "--n", group_gl(3)});
    rows.push_back({"sl", "--n", group_sl(3)});
    rows.push_back({"so", "--n", group_so(3)});
    rows.push_back({"o", "--n", group_o(3)});
    rows.push_back({"u", "--n (complex dimension; ambient is 2n)", group_u(2)});
    rows.push_back({"diagonal", "--n", group_diagonal(3)});
    rows.push_back({"block", "--n --s (invertible upper-left s x s block)", group_block(3, 1)});
    rows.push_back({"product_oo", "--n1 --n2", group_product_oo(2, 2)});
    rows.push_back({"signs", "--n", group_signs(3)});
    rows.push_back({"finite", "generator matrices; use --group-file", std::nullopt});
    return rows;
}

inline std::string render_catalog(const std::string& format) {
    const auto rows = catalog_rows();
    if (format == "json") {
        Json families = Json::array();
        for (const auto& r : rows) {
            Json entry{{"family", r.family}, {"parameters", r.parameters}};
            if (r.example) {
                entry["example"] = Json{{"name", r.example->name},
                                        {"ambient", r.example->n},
                                        {"algebra_dim", r.example->algebra.size()},
                                        {"component_reps", r.example->reps.size()}};
            } else {
                entry["example"] = Json();
            }
            families.push_back(std::move(entry));
        }
        return Json{{"schema_version", 1}, {"families", std::move(families)}}.dump(2) + "\n";
    }
    std::string out = "builtin group families (example instance, Lie algebra dimension, extra "
                      "component representatives):\n";
    for (const auto& r : rows) {
        out += "  " + r.family;
        out.append(r.family.size() < 12 ? 12 - r.family.size() : 1, ' ');
        if (r.example)
            out += r.example->name + "  dim g = " + std::to_string(r.example->algebra.size()) +
                   ", reps = " + std::to_string(r.example->reps.size()) + "  (" + r.parameters + ")";
        else
            out += "(" + r.parameters + ")";
        out += "\n";
    }
    return out;
}

inline std::string render_group_verdict(const GroupSpec& g, const std::vector<std::string>& violations,
                                        const std::string& format) {
    if (format == "json") {
        return Json{{"schema_version", 1},
                    {"group", Json{{"name", g.name}, {"family", g.family}, {"n", g.n}}},
                    {"valid", violations.empty()},
                    {"violations", violations}}
                   .dump(2) +
               "\n";
    }
    std::string out = "group " + g.name + ": ";
    if (violations.empty()) {
        out += "valid (algebra dim " + std::to_string(g.algebra.size()) + ", " +
               std::to_string(g.reps.size()) + " component representatives)\n";
    } else {
        out += "INVALID\n";
        for (const auto& v : violations) out += "  - " + v + "\n";
    }
    return out;
}

inline std::string render_tensor_verdict(const GroupSpec& g, const TensorElement& t, bool invariant,
                                         const std::string& witness, const std::string& format) {
    if (format == "json") {
        Json j{{"schema_version", 1},
               {"group", Json{{"name", g.name}, {"family", g.family}, {"n", g.n}}},
               {"tensor_valence", to_string(t.spec.valence)},
               {"invariant", invariant},
               {"witness", invariant ? Json() : Json(witness)}};
        return j.dump(2) + "\n";
    }
    std::string out = "tensor (" + to_string(t.spec.valence) + ") under group " + g.name + ": ";
    out += invariant ? "invariant\n" : ("not invariant: " + witness + "\n");
    return out;
}

/// 1-based sparse listing of the nonzero coordinates, e.g. "T[1,2,3] = -1/4".
inline std::string sparse_lines(const char* symbol, const TensorElement& t) {
    const std::size_t n = t.spec.n, arity = t.spec.arity();
    std::string out;
    std::size_t count = 0;
    for (std::size_t f = 0; f < t.coords.size(); ++f) {
        if (sgn(t.coords[f]) == 0) continue;
        ++count;
        std::vector<std::size_t> idx(arity);
        std::size_t rest = f;
        for (std::size_t s = arity; s-- > 0;) {
            idx[s] = rest % n;
            rest /= n;
        }
        out += "  ";
        out += symbol;
        out += "[";
        for (std::size_t s = 0; s < arity; ++s)
            out += std::to_string(idx[s] + 1) + (s + 1 < arity ? "," : "");
        out += "] = " + to_string(t.coords[f]) + "\n";
    }
    if (count == 0) out += "  (all zero)\n";
    return out;
}

inline std::string render_model(const ParallelismData& d, const TensorElement& torsion,
                                const TensorElement& curvature, const std::string& format) {
    if (format == "json") {
        return Json{{"schema_version", 1},
                    {"n", d.n},
                    {"jacobi", "holds"},
                    {"torsion", element_to_json(torsion)},
                    {"curvature", element_to_json(curvature)}}
                   .dump(2) +
               "\n";
    }
    std::string out = "parallelism model on R^" + std::to_string(d.n) + "\n";
    out += "Jacobi identity: holds\n";
    out += "torsion constants T[i,j,k]:\n" + sparse_lines("T", torsion);
    out += "curvature constants R[i,j,k,l]:\n" + sparse_lines("R", curvature);
    return out;
}

}  // namespace detail

/// Runs the command line given the arguments after the program name.
/// Returns 0 on success, 1 on a domain failure, 2 on a usage error.
inline int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"exact classification of characteristic tensors for matrix structure groups"};
    app.name("etk");
    app.require_subcommand(1);

    detail::GroupSource source;
    std::string format = "text", out_path, tensor_file, model_file;
    unsigned long seed = 0;
    bool filter = false;

    auto add_group_options = [&](CLI::App* cmd) {
        auto* fam = cmd->add_option("--group", source.family,
                                    "builtin family (see the catalog subcommand)");
        auto* file = cmd->add_option("--group-file", source.file,
                                     "JSON file with {name, n, lie_algebra, component_reps}");
        cmd->add_option("--n", source.n, "dimension parameter")->check(CLI::PositiveNumber);
        cmd->add_option("--n1", source.n1, "first factor dimension")->check(CLI::PositiveNumber);
        cmd->add_option("--n2", source.n2, "second factor dimension")->check(CLI::PositiveNumber);
        cmd->add_option("--s", source.s, "block parameter")->check(CLI::PositiveNumber);
        fam->excludes(file);
        file->excludes(fam);
    };
    auto add_output_options = [&](CLI::App* cmd) {
        cmd->add_option("--format", format, "output format")
            ->check(CLI::IsMember({"text", "json"}));
        cmd->add_option("--out", out_path, "write the document to this file instead of stdout");
    };

    CLI::App* cmd_classify =
        app.add_subcommand("classify", "compute and report the invariant tensor spaces");
    add_group_options(cmd_classify);
    add_output_options(cmd_classify);
    cmd_classify->add_flag("--g-valued-filter", filter,
                           "also restrict the curvature space to algebra-valued tensors");
    cmd_classify->add_option("--seed", seed, "seed for the a posteriori rotation checks");

    CLI::App* cmd_catalog = app.add_subcommand("catalog", "list the builtin group families");
    add_output_options(cmd_catalog);

    CLI::App* cmd_check = app.add_subcommand(
        "check", "validate a group, or test a tensor file for invariance under it");
    add_group_options(cmd_check);
    add_output_options(cmd_check);
    cmd_check->add_option("--tensor-file", tensor_file,
                          "JSON tensor {spec, coords}; verdict decides the exit code");

    CLI::App* cmd_model = app.add_subcommand(
        "model", "torsion and curvature constants of a parallelism model file");
    cmd_model->add_option("--file", model_file, "JSON model {n, lambda, gamma}")->required();
    add_output_options(cmd_model);

    try {
        std::vector<std::string> reversed(args.rbegin(), args.rend());
        app.parse(reversed);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? 0 : 2;
    }

    try {
        if (cmd_classify->parsed()) {
            GroupSpec g = source.load();
            detail::require_within_cap(g.n);
            std::vector<std::string> violations = validate(g);
            if (!violations.empty()) {
                std::string msg = "invalid group " + g.name + ":";
                for (const auto& v : violations) msg += "\n  - " + v;
                throw detail::CliFailure(msg);
            }
            ClassifyOptions options;
            options.apply_g_valued_filter = filter;
            options.seed = seed;
            ClassificationReport rep = classify(g, options);
            detail::emit(render(rep, format), out_path, out);
            return 0;
        }
        if (cmd_catalog->parsed()) {
            detail::emit(detail::render_catalog(format), out_path, out);
            return 0;
        }
        if (cmd_check->parsed()) {
            GroupSpec g = source.load();
            detail::require_within_cap(g.n);
            std::vector<std::string> violations = validate(g);
            if (tensor_file.empty()) {
                detail::emit(detail::render_group_verdict(g, violations, format), out_path, out);
                return violations.empty() ? 0 : 1;
            }
            if (!violations.empty()) {
                std::string msg = "invalid group " + g.name + ":";
                for (const auto& v : violations) msg += "\n  - " + v;
                throw detail::CliFailure(msg);
            }
            TensorElement t = element_from_json(detail::read_json_file(tensor_file));
            detail::require_declared_symmetries(t);
            std::string witness;
            const bool invariant = detail::tensor_invariant(g, t, witness);
            detail::emit(detail::render_tensor_verdict(g, t, invariant, witness, format), out_path,
                         out);
            return invariant ? 0 : 1;
        }
        // model
        ParallelismData d = parallelism_from_json(detail::read_json_file(model_file));
        detail::require_within_cap(d.n);
        if (auto bad = first_jacobi_violation(d)) {
            throw detail::CliFailure(
                "structure constants fail the Jacobi identity: the cyclic bracket sum over "
                "(e_" + std::to_string((*bad)[0] + 1) + ", e_" + std::to_string((*bad)[1] + 1) +
                ", e_" + std::to_string((*bad)[2] + 1) + ") has a nonzero e_" +
                std::to_string((*bad)[3] + 1) + " component");
        }
        detail::emit(detail::render_model(d, torsion_constants(d), curvature_constants(d), format),
                     out_path, out);
        return 0;
    } catch (const detail::CliUsage& e) {
        err << "etk: " << e.what() << "\n";
        return 2;
    } catch (const detail::CliFailure& e) {
        err << "etk: " << e.what() << "\n";
        return 1;
    } catch (const std::exception& e) {
        // remaining library exceptions are domain problems with the inputs
        err << "etk: " << e.what() << "\n";
        return 1;
    }
}

}  // namespace etk
