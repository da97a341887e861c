#pragma once

// Command implementations behind the pathmoments CLI. Each command renders
// its artifact into a string so nothing is written unless it completes.

#include "pathmoments/brownian.hpp"
#include "pathmoments/budget.hpp"
#include "pathmoments/closed_form.hpp"
#include "pathmoments/moments.hpp"
#include "pathmoments/power_sums.hpp"

#include <nlohmann/json.hpp>

#include <optional>
#include <sstream>
#include <string>
#include <vector>

namespace pathmoments::cli {

enum class output_format { json, csv, latex };

inline output_format parse_format(std::string_view s) {
    if (s == "json") return output_format::json;
    if (s == "csv") return output_format::csv;
    if (s == "latex") return output_format::latex;
    throw precondition_error("unknown output format '" + std::string(s) + "' (expected json, csv or latex)");
}

namespace exit_code {
inline constexpr int ok = 0;
inline constexpr int input_error = 2;  // bad arguments or exhausted budget
inline constexpr int fit_failure = 3;
inline constexpr int comparison_failure = 4;
}  // namespace exit_code

struct run_config {
    std::optional<family> path_family;
    unsigned r_max = 20;
    std::optional<unsigned> n_max;
    unsigned n_base = 1024;
    unsigned levels = 4;
    unsigned precision_digits = 60;
    unsigned guard = default_guard;
    output_format format = output_format::json;
    bool allow_large = false;
};

struct command_output {
    int exit_code = exit_code::ok;
    std::string artifact;     // written to --out or stdout on success paths
    std::string diagnostics;  // human-readable notes for stderr
};

inline void validate(const run_config& cfg) {
    if (cfg.r_max > default_r_limit && !cfg.allow_large)
        throw precondition_error("--rmax above " + std::to_string(default_r_limit) + " needs --allow-large");
    if (cfg.precision_digits < 30) throw precondition_error("--precision must be at least 30");
    if (cfg.guard < 1) throw precondition_error("--guard must be at least 1");
}

inline table_options table_opts(const run_config& cfg, const budget& limit) {
    return {cfg.allow_large ? std::max(cfg.r_max, default_r_limit) : default_r_limit, &limit};
}

inline std::string dump(const nlohmann::json& j) { return j.dump(2) + "\n"; }

// ---------------------------------------------------------------------------

inline command_output cmd_powersums(const run_config& cfg, const budget& limit) {
    validate(cfg);
    if (!cfg.path_family) throw precondition_error("powersums needs --family");
    const unsigned n_max = cfg.n_max.value_or(20);
    const auto table = build_power_sum_table(*cfg.path_family, n_max, cfg.r_max, table_opts(cfg, limit));

    std::ostringstream out;
    switch (cfg.format) {
    case output_format::csv: write_table_csv(table, out); break;
    case output_format::json: {
        nlohmann::json rows = nlohmann::json::array();
        for (unsigned r = 0; r <= table.r_max(); ++r) {
            nlohmann::json row = nlohmann::json::array();
            for (const auto& v : table.row(r)) row.push_back(v.str());
            rows.push_back({{"r", r}, {"values", std::move(row)}});
        }
        out << dump({{"family", std::string(to_string(table.path_family()))},
                     {"n_max", table.n_max()},
                     {"r_max", table.r_max()},
                     {"rows", std::move(rows)}});
        break;
    }
    case output_format::latex: {
        const char symbol = table.path_family() == family::dyck ? 'C' : 'M';
        out << "\\begin{tabular}{r";
        for (unsigned r = 0; r <= table.r_max(); ++r) out << 'r';
        out << "}\n$n$";
        for (unsigned r = 0; r <= table.r_max(); ++r) out << " & $" << symbol << "_{" << r << "}(n)$";
        out << " \\\\\n\\hline\n";
        for (unsigned n = 0; n <= table.n_max(); ++n) {
            out << n;
            for (unsigned r = 0; r <= table.r_max(); ++r) out << " & " << table.at(r, n).str();
            out << " \\\\\n";
        }
        out << "\\end{tabular}\n";
        break;
    }
    }
    return {exit_code::ok, out.str(), {}};
}

// ---------------------------------------------------------------------------

enum class vault_status { not_covered, match, mismatch };

inline std::string_view to_string(vault_status v) {
    switch (v) {
    case vault_status::not_covered: return "not_covered";
    case vault_status::match: return "match";
    case vault_status::mismatch: return "mismatch";
    }
    return "?";
}

struct fit_report {
    unsigned r = 0;
    std::optional<auto_fit_result> fit;
    unsigned holdout_from = 0;
    unsigned holdout_to = 0;
    holdout_result holdout;
    vault_status vault = vault_status::not_covered;

    bool ok() const { return fit && holdout.pass && vault != vault_status::mismatch; }
};

inline constexpr unsigned holdout_span = 50;

/// Largest uniform degree searched for order r.
inline unsigned degree_cap(unsigned r) { return 2 * r + 2; }

/// Table length that lets every r <= r_max search up to its degree cap and
/// still leave holdout_span points after the fit window.
inline unsigned fit_table_size(family f, unsigned r_max, unsigned guard) {
    return static_cast<unsigned>(family_basis(f).size()) * (degree_cap(r_max) + 1) + guard + holdout_span;
}

struct family_fits {
    power_sum_table table;
    std::vector<fit_report> reports;  // r = 1..r_max

    bool all_ok() const {
        for (const auto& rep : reports)
            if (!rep.ok()) return false;
        return true;
    }

    std::vector<closed_form> forms() const {
        std::vector<closed_form> out;
        for (const auto& rep : reports) out.push_back(rep.fit->form);
        return out;
    }
};

/// Builds the DP table, then for each r: degree search, holdout on the 50
/// points after the fit window, and comparison with the printed formula.
inline family_fits fit_family(family f, unsigned r_max, unsigned guard, std::optional<unsigned> n_max,
                              const table_options& topts) {
    const unsigned needed = fit_table_size(f, std::max(r_max, 1U), guard);
    const unsigned size = std::max(needed, n_max.value_or(0));
    family_fits out{build_power_sum_table(f, size, r_max, topts), {}};
    const auto& basis = family_basis(f);
    for (unsigned r = 1; r <= r_max; ++r) {
        fit_report rep;
        rep.r = r;
        const auto values = to_rationals(out.table.row(r));
        rep.fit = auto_fit(values, 0, basis, degree_cap(r), {guard, r, topts.limit});
        if (rep.fit) {
            rep.holdout_from = rep.fit->window_end + 1;
            rep.holdout_to = rep.fit->window_end + holdout_span;
            rep.holdout = verify_holdout(rep.fit->form, out.table, rep.holdout_from, rep.holdout_to);
            if (in_vault(f, r))
                rep.vault = rep.fit->form == paper_formula(f, r) ? vault_status::match : vault_status::mismatch;
        } else {
            rep.holdout = {false, std::nullopt};
        }
        out.reports.push_back(std::move(rep));
    }
    return out;
}

inline std::string describe_failure(family f, const fit_report& rep) {
    std::string who = std::string(to_string(f)) + " r=" + std::to_string(rep.r) + ": ";
    if (!rep.fit) return who + "no closed form up to uniform degree " + std::to_string(degree_cap(rep.r));
    if (!rep.holdout.pass)
        return who + "holdout mismatch at n=" + std::to_string(rep.holdout.first_mismatch.value_or(0));
    if (rep.vault == vault_status::mismatch) return who + "fitted form differs from the printed formula";
    return who + "ok";
}

inline command_output cmd_fit(const run_config& cfg, const budget& limit) {
    validate(cfg);
    if (!cfg.path_family) throw precondition_error("fit needs --family");
    const family f = *cfg.path_family;
    const auto fits = fit_family(f, cfg.r_max, cfg.guard, cfg.n_max, table_opts(cfg, limit));

    command_output result;
    std::ostringstream diag;
    for (const auto& rep : fits.reports)
        if (!rep.ok()) diag << describe_failure(f, rep) << '\n';
    result.diagnostics = diag.str();
    result.exit_code = fits.all_ok() ? exit_code::ok : exit_code::fit_failure;

    std::ostringstream out;
    switch (cfg.format) {
    case output_format::json: {
        nlohmann::json forms = nlohmann::json::array();
        nlohmann::json checks = nlohmann::json::array();
        for (const auto& rep : fits.reports) {
            nlohmann::json check{{"r", rep.r}, {"found", rep.fit.has_value()}};
            if (rep.fit) {
                forms.push_back(to_json(rep.fit->form));
                check["uniform_degree"] = rep.fit->uniform_degree;
                check["fit_window"] = {0, rep.fit->window_end};
                check["holdout"] = {rep.holdout_from, rep.holdout_to};
                check["holdout_pass"] = rep.holdout.pass;
                check["vault"] = std::string(to_string(rep.vault));
            }
            checks.push_back(std::move(check));
        }
        out << dump({{"family", std::string(to_string(f))},
                     {"guard", cfg.guard},
                     {"forms", std::move(forms)},
                     {"verification", std::move(checks)}});
        break;
    }
    case output_format::csv:
        out << "family,r,basis,power,coefficient\n";
        for (const auto& rep : fits.reports) {
            if (!rep.fit) continue;
            for (const auto& [b, p] : rep.fit->form.terms())
                for (std::size_t k = 0; k < p.coefficients().size(); ++k)
                    out << to_string(f) << ',' << rep.r << ',' << basis_id(b) << ',' << k << ','
                        << to_fraction_string(p.coefficients()[k]) << '\n';
        }
        break;
    case output_format::latex:
        for (const auto& rep : fits.reports)
            if (rep.fit) out << "$$\n" << to_latex(rep.fit->form) << " \\quad .\n$$\n\n";
        break;
    }
    result.artifact = out.str();
    return result;
}

// ---------------------------------------------------------------------------

inline limit_options limit_opts(const run_config& cfg, const budget& limit) {
    return {cfg.n_base, cfg.levels, cfg.precision_digits, &limit};
}

inline command_output cmd_moments(const run_config& cfg, const budget& limit) {
    validate(cfg);
    if (!cfg.path_family) throw precondition_error("moments needs --family");
    if (cfg.r_max < 3) throw precondition_error("moments needs --rmax of at least 3");
    const family f = *cfg.path_family;
    const auto fits = fit_family(f, cfg.r_max, cfg.guard, std::nullopt, table_opts(cfg, limit));
    if (!fits.all_ok()) {
        command_output failed{exit_code::fit_failure, {}, {}};
        for (const auto& rep : fits.reports)
            if (!rep.ok()) failed.diagnostics += describe_failure(f, rep) + "\n";
        return failed;
    }
    const auto limits = limit_standardized_moments(closed_form_oracle(f, fits.forms()), cfg.r_max,
                                                   limit_opts(cfg, limit));
    std::ostringstream out;
    switch (cfg.format) {
    case output_format::json: out << dump(moment_report_json(f, limits, cfg.precision_digits)); break;
    case output_format::csv:
        out << "family,r,limit,error_estimate,ladder_top_n\n";
        for (std::size_t i = 0; i < limits.size(); ++i)
            out << to_string(f) << ',' << i + 3 << ',' << to_decimal_string(limits[i].value, cfg.precision_digits)
                << ',' << to_decimal_string(limits[i].error_estimate, 6) << ',' << limits[i].ladder_top_n << '\n';
        break;
    case output_format::latex:
        out << "\\begin{tabular}{rll}\n$r$ & limit & error estimate \\\\\n\\hline\n";
        for (std::size_t i = 0; i < limits.size(); ++i)
            out << i + 3 << " & " << to_decimal_string(limits[i].value, 15) << " & "
                << to_decimal_string(limits[i].error_estimate, 3) << " \\\\\n";
        out << "\\end{tabular}\n";
        break;
    }
    return {exit_code::ok, out.str(), {}};
}

// ---------------------------------------------------------------------------

struct comparison_row {
    family path_family;
    unsigned r;
    real lattice;
    real excursion;
    real difference;
    real combined_error;
    real tolerance;
    bool pass;
};

/// Absolute tolerance floor for order r.
inline double comparison_floor(unsigned r) { return r <= 10 ? 1e-4 : 1e-2; }

inline std::vector<comparison_row> compare_family(family f, const run_config& cfg, const budget& limit,
                                                  std::string& diagnostics) {
    std::vector<comparison_row> rows;
    if (cfg.r_max < 3) return rows;
    const auto fits = fit_family(f, cfg.r_max, cfg.guard, std::nullopt, table_opts(cfg, limit));
    if (!fits.all_ok()) {
        for (const auto& rep : fits.reports)
            if (!rep.ok()) diagnostics += describe_failure(f, rep) + "\n";
        throw error("closed-form fitting failed");
    }
    const auto limits = limit_standardized_moments(closed_form_oracle(f, fits.forms()), cfg.r_max,
                                                   limit_opts(cfg, limit));
    precision_scope scope(cfg.precision_digits + 30);
    const real excursion_bound = pow(real(10), -static_cast<int>(cfg.precision_digits));
    for (unsigned r = 3; r <= cfg.r_max; ++r) {
        const auto& est = limits[r - 3];
        comparison_row row{f, r, est.value, excursion_standardized_moment(r, cfg.precision_digits), 0, 0, 0, false};
        row.difference = abs(row.lattice - row.excursion);
        row.combined_error = est.error_estimate + excursion_bound * (abs(row.excursion) + 1);
        const real floor = real(comparison_floor(r));
        const real scaled = 10 * row.combined_error;
        row.tolerance = floor > scaled ? floor : scaled;
        row.pass = row.difference <= row.tolerance;
        rows.push_back(std::move(row));
    }
    return rows;
}

inline command_output cmd_compare(const run_config& cfg, const budget& limit) {
    validate(cfg);
    std::vector<family> families;
    if (cfg.path_family) families.push_back(*cfg.path_family);
    else families = {family::dyck, family::motzkin};

    command_output result;
    std::vector<comparison_row> rows;
    try {
        for (family f : families) {
            auto part = compare_family(f, cfg, limit, result.diagnostics);
            rows.insert(rows.end(), part.begin(), part.end());
        }
    } catch (const resource_budget_exceeded&) {
        throw;
    } catch (const precondition_error&) {
        throw;
    } catch (const error& e) {
        result.exit_code = exit_code::fit_failure;
        result.diagnostics += std::string(e.what()) + "\n";
        return result;
    }

    bool all_pass = true;
    for (const auto& row : rows) all_pass = all_pass && row.pass;
    result.exit_code = all_pass ? exit_code::ok : exit_code::comparison_failure;
    const unsigned digits = cfg.precision_digits;

    std::ostringstream out;
    switch (cfg.format) {
    case output_format::json: {
        nlohmann::json items = nlohmann::json::array();
        for (const auto& row : rows)
            items.push_back({{"family", std::string(to_string(row.path_family))},
                             {"r", row.r},
                             {"lattice_limit", to_decimal_string(row.lattice, digits)},
                             {"excursion", to_decimal_string(row.excursion, digits)},
                             {"abs_difference", to_decimal_string(row.difference, 6)},
                             {"combined_error_estimate", to_decimal_string(row.combined_error, 6)},
                             {"tolerance", to_decimal_string(row.tolerance, 6)},
                             {"pass", row.pass}});
        out << dump({{"rows", std::move(items)}, {"all_pass", all_pass}});
        break;
    }
    case output_format::csv:
        out << "family,r,lattice_limit,excursion,abs_difference,combined_error_estimate,tolerance,pass\n";
        for (const auto& row : rows)
            out << to_string(row.path_family) << ',' << row.r << ',' << to_decimal_string(row.lattice, digits) << ','
                << to_decimal_string(row.excursion, digits) << ',' << to_decimal_string(row.difference, 6) << ','
                << to_decimal_string(row.combined_error, 6) << ',' << to_decimal_string(row.tolerance, 6) << ','
                << (row.pass ? "true" : "false") << '\n';
        break;
    case output_format::latex:
        out << "\\begin{tabular}{lrllll}\nfamily & $r$ & lattice limit & excursion & difference & error \\\\\n"
               "\\hline\n";
        for (const auto& row : rows)
            out << to_string(row.path_family) << " & " << row.r << " & " << to_decimal_string(row.lattice, 15)
                << " & " << to_decimal_string(row.excursion, 15) << " & " << to_decimal_string(row.difference, 3)
                << " & " << to_decimal_string(row.combined_error, 3) << " \\\\\n";
        out << "\\end{tabular}\n";
        break;
    }
    for (const auto& row : rows)
        if (!row.pass)
            result.diagnostics += std::string(to_string(row.path_family)) + " r=" + std::to_string(row.r) +
                                  ": difference " + to_decimal_string(row.difference, 6) + " exceeds tolerance " +
                                  to_decimal_string(row.tolerance, 6) + "\n";
    result.artifact = out.str();
    return result;
}

// ---------------------------------------------------------------------------

inline command_output cmd_excursion(const run_config& cfg, const budget&) {
    validate(cfg);
    const unsigned k_max = std::max(cfg.r_max, 1U);
    std::ostringstream out;
    switch (cfg.format) {
    case output_format::json: out << dump(excursion_oracle_json(k_max, cfg.precision_digits)); break;
    case output_format::csv: {
        out << "k,q,p,s,standardized\n";
        for (const auto& row : excursion_oracle_json(k_max, cfg.precision_digits))
            out << row["k"].get<unsigned>() << ',' << row["raw"]["q"].get<std::string>() << ','
                << row["raw"]["p"].get<int>() << ',' << row["raw"]["s"].get<int>() << ','
                << row["standardized"].get<std::string>() << '\n';
        break;
    }
    case output_format::latex: {
        out << "\\begin{tabular}{rll}\n$k$ & $E B^k$ & standardized \\\\\n\\hline\n";
        for (const auto& row : excursion_oracle_json(k_max, cfg.precision_digits)) {
            std::string radical;
            if (row["raw"]["p"].get<int>() == 1) radical += "\\sqrt{2}";
            if (row["raw"]["s"].get<int>() == 1) radical += "\\sqrt{\\pi}";
            out << row["k"].get<unsigned>() << " & $" << row["raw"]["q"].get<std::string>() << radical << "$ & "
                << row["standardized"].get<std::string>().substr(0, 18) << " \\\\\n";
        }
        out << "\\end{tabular}\n";
        break;
    }
    }
    return {exit_code::ok, out.str(), {}};
}

}  // namespace pathmoments::cli
