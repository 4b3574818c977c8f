#include "polyinv/cli_core.hpp"

#include <chrono>
#include <fstream>
#include <sstream>

#include "polyinv/checker.hpp"
#include "polyinv/sampler.hpp"

namespace polyinv {

using nlohmann::json;

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::invalid_argument("cannot open '" + path + "'");
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

std::string content_digest(const std::string& bytes) {
    std::uint64_t h = 0xcbf29ce484222325ull;
    for (unsigned char c : bytes) {
        h ^= c;
        h *= 0x100000001b3ull;
    }
    char buf[17];
    snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
    return buf;
}

std::vector<Polynomial> read_polynomial_list(const std::string& path, const LoopSystem& loop) {
    std::istringstream in(read_file(path));
    std::vector<Polynomial> out;
    std::string line;
    const std::vector<std::string> names = loop.ring_names();
    while (std::getline(in, line)) {
        auto hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        bool blank = true;
        for (char c : line) blank &= std::isspace(static_cast<unsigned char>(c)) != 0;
        if (blank) continue;
        out.push_back(parse_polynomial(line, names));
    }
    return out;
}

std::vector<std::vector<Integer>> read_lattice_file(const std::string& path) {
    std::istringstream in(read_file(path));
    std::vector<std::vector<Integer>> rows;
    std::string line;
    while (std::getline(in, line)) {
        auto hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        std::istringstream ls(line);
        std::vector<Integer> row;
        std::string tok;
        while (ls >> tok) row.emplace_back(tok);
        if (!row.empty()) rows.push_back(std::move(row));
    }
    return rows;
}

namespace {

json constraints_to_json(const ConstraintSet& cs, const std::vector<std::string>& names) {
    json j;
    j["equations"] = json::array();
    j["inequations"] = json::array();
    j["dropped_atoms"] = cs.unsupported_atoms;
    for (const Polynomial& p : cs.equations) j["equations"].push_back(p.to_string(names));
    for (const Polynomial& p : cs.inequations) j["inequations"].push_back(p.to_string(names));
    return j;
}

json point_to_json(const Point& p) {
    json j = json::array();
    for (const Rational& q : p) j.push_back(to_string(q));
    return j;
}

struct Envelope {
    json body;
    std::chrono::steady_clock::time_point started = std::chrono::steady_clock::now();

    Envelope(const std::string& command, const CliOptions& opts) {
        body["tool"] = "polyinv";
        body["version"] = "0.1.0";
        body["command"] = command;
        body["seed"] = opts.seed;
    }

    RunReport finish(json result, const std::string& status, int exit_code) {
        body["result"] = std::move(result);
        body["status"] = status;
        body["timing_ms"] = std::chrono::duration_cast<std::chrono::milliseconds>(
                                std::chrono::steady_clock::now() - started)
                                .count();
        return {body, exit_code};
    }

    RunReport input_error(const std::string& message) {
        return finish(json{{"error", message}}, "input-error", 3);
    }
};

GroebnerBudget budget_from(const CliOptions& opts) {
    GroebnerBudget budget;
    if (opts.budget_ms)
        budget.deadline = std::chrono::steady_clock::now() + std::chrono::milliseconds(*opts.budget_ms);
    return budget;
}

LoopSystem load_loop(const CliOptions& opts, Envelope& env) {
    std::string text = read_file(opts.loop_file);
    env.body["input"] = opts.loop_file;
    env.body["input_digest"] = content_digest(text);
    return parse_loop(text);
}

json certification_to_json(const CertificationReport& cert) {
    json j;
    j["status"] = to_string(cert.status);
    j["failed_branch_index"] = cert.failed_branch_index;
    j["initial_ok"] = cert.initial_ok;
    j["branch_ok"] = cert.branch_ok;
    j["detail"] = cert.detail;
    return j;
}

}  // namespace

json loop_to_json(const LoopSystem& loop) {
    const std::vector<std::string> names = loop.ring_names();
    json j;
    j["variables"] = loop.variables;
    j["parameters"] = loop.parameters;
    j["init"] = constraints_to_json(loop.init, names);
    j["guard"] = constraints_to_json(loop.guard, names);
    j["branches"] = json::array();
    for (const Branch& b : loop.branches) {
        json jb;
        jb["when"] = constraints_to_json(b.condition, names);
        json assign;
        for (std::size_t i = 0; i < loop.variables.size(); ++i)
            assign[loop.variables[i]] = b.assignment[i].to_string(names);
        jb["assign"] = assign;
        j["branches"].push_back(jb);
    }
    return j;
}

json interp_result_to_json(const InterpResult& r, const LoopSystem& loop) {
    const std::vector<std::string> names = loop.ring_names();
    json j;
    j["status"] = to_string(r.status);
    j["detail"] = r.detail;
    j["nullspace_dim"] = r.nullspace_dim;
    j["primes"] = json::array();
    for (std::uint64_t p : r.primes_used) j["primes"].push_back(std::to_string(p));
    j["candidates"] = json::array();
    for (const Polynomial& f : r.basis) j["candidates"].push_back(f.to_string(names));
    if (r.gate_ran) j["certification"] = certification_to_json(r.certification);
    return j;
}

json analyze_report_to_json(const AnalyzeReport& rep, const LoopSystem& loop) {
    json j;
    j["p_solvable"] = rep.detection.supported();
    j["notes"] = rep.notes;
    if (!rep.detection.supported()) {
        j["unsupported_reason"] = rep.detection.unsupported_reason;
        j["witness"] = rep.detection.witness;
        return j;
    }
    const PSolvableStructure& st = *rep.detection.structure;
    json blocks = json::array();
    for (const auto& block : st.blocks) {
        json names = json::array();
        for (std::size_t v : block) names.push_back(loop.variables[v]);
        blocks.push_back(names);
    }
    j["blocks"] = blocks;
    json mat = json::array();
    for (std::size_t i = 0; i < st.coefficient_matrix.rows(); ++i) {
        json row = json::array();
        for (std::size_t k = 0; k < st.coefficient_matrix.cols(); ++k)
            row.push_back(to_string(st.coefficient_matrix.at(i, k)));
        mat.push_back(row);
    }
    j["coefficient_matrix"] = mat;
    j["characteristic_polynomial"] = rep.characteristic.to_string({"t"});

    json eig;
    eig["rational"] = json::array();
    for (const auto& [value, mult] : rep.eigen.rational_roots)
        eig["rational"].push_back(json{{"value", to_string(value)}, {"multiplicity", mult}});
    eig["residual"] = rep.eigen.residual.to_string({"t"});
    eig["all_rational"] = rep.eigen.all_rational();
    eig["zero_count"] = rep.eigen.zero_count;
    eig["one_count"] = rep.eigen.one_count;
    j["eigenvalues"] = eig;

    if (rep.lattice) {
        json lat;
        lat["user_supplied"] = rep.lattice_user_supplied;
        lat["rank"] = rep.lattice->rank();
        lat["basis"] = json::array();
        for (const auto& row : rep.lattice->basis) {
            json jr = json::array();
            for (const Integer& e : row) jr.push_back(to_string(e));
            lat["basis"].push_back(jr);
        }
        j["lattice"] = lat;
    }
    if (rep.ideal) {
        json ji;
        std::vector<std::string> ynames;
        for (std::size_t i = 1; i <= rep.ideal->variable_count; ++i)
            ynames.push_back("y" + std::to_string(i));
        ji["generators"] = json::array();
        for (const Polynomial& g : rep.ideal->generators)
            ji["generators"].push_back(g.to_string(ynames));
        ji["dimension"] = rep.ideal->dimension;
        ji["rank"] = rep.ideal->rank;
        ji["degree"] = rep.ideal->degree ? json(to_string(*rep.ideal->degree)) : json(nullptr);
        j["ideal"] = ji;
    }
    if (rep.bounds) {
        const BoundReport& b = *rep.bounds;
        json jb;
        jb["block_sizes"] = b.block_sizes;
        jb["block_tail_degrees"] = b.block_tail_degrees;
        jb["degree_sequence"] = json::array();
        for (const Integer& d : b.degree_sequence) jb["degree_sequence"].push_back(to_string(d));
        jb["decoupled_sequence"] = json::array();
        for (const Integer& w : b.decoupled_sequence)
            jb["decoupled_sequence"].push_back(to_string(w));
        jb["lattice_degree"] = b.lattice_degree ? json(to_string(*b.lattice_degree)) : json(nullptr);
        jb["bound_generic"] = b.bound_generic ? json(to_string(*b.bound_generic)) : json(nullptr);
        jb["bound_n_free"] = b.bound_n_free ? json(to_string(*b.bound_n_free)) : json(nullptr);
        jb["bound_sharp"] = b.bound_sharp ? json(to_string(*b.bound_sharp)) : json(nullptr);
        jb["dimension_window"] = json::array({b.dimension_window_low, b.dimension_window_high});
        jb["triviality"] = b.triviality;
        jb["notes"] = b.notes;
        j["bounds"] = jb;
    }
    return j;
}

RunReport run_parse(const CliOptions& opts) {
    Envelope env("parse", opts);
    try {
        LoopSystem loop = load_loop(opts, env);
        json result;
        result["loop"] = loop_to_json(loop);
        result["normalized"] = pretty_print(loop);
        json modes = json::array();
        for (InvariantMode m : {InvariantMode::plain, InvariantMode::inductive, InvariantMode::absolute})
            if (loop.supports(m)) modes.push_back(to_string(m));
        result["supported_modes"] = modes;
        return env.finish(std::move(result), "ok", 0);
    } catch (const std::exception& e) {
        return env.input_error(e.what());
    }
}

RunReport run_sample(const CliOptions& opts) {
    Envelope env("sample", opts);
    try {
        LoopSystem loop = load_loop(opts, env);
        SampleConfig cfg;
        cfg.mode = invariant_mode_from_string(opts.mode);
        cfg.depth = opts.depth;
        cfg.num_initials = opts.initials;
        cfg.seed = opts.seed;
        std::vector<Point> points = sample_points(loop, cfg);
        json result;
        result["mode"] = opts.mode;
        result["depth"] = cfg.depth;
        result["coordinates"] = loop.ring_names();
        result["points"] = json::array();
        for (const Point& p : points) result["points"].push_back(point_to_json(p));
        return env.finish(std::move(result), "ok", 0);
    } catch (const ExclusivityViolation& e) {
        return env.finish(json{{"error", e.what()}}, "exclusivity-violation", 1);
    } catch (const std::exception& e) {
        return env.input_error(e.what());
    }
}

RunReport run_infer(const CliOptions& opts) {
    Envelope env("infer", opts);
    try {
        LoopSystem loop = load_loop(opts, env);
        InvariantMode mode = invariant_mode_from_string(opts.mode);
        if (!loop.supports(mode))
            return env.input_error("mode '" + opts.mode + "' unavailable: loop has order atoms");

        unsigned degree = opts.degree;
        json analyze_note;
        if (opts.analyze_first && !opts.degree_explicit) {
            std::optional<std::vector<std::vector<Integer>>> user_lattice;
            if (opts.lattice_file) user_lattice = read_lattice_file(*opts.lattice_file);
            AnalyzeReport rep = analyze_loop(loop, user_lattice);
            if (rep.bounds && (rep.bounds->bound_sharp || rep.bounds->bound_generic)) {
                Integer candidate =
                    rep.bounds->bound_sharp ? *rep.bounds->bound_sharp : *rep.bounds->bound_generic;
                long clamped = candidate > 8 ? 8 : candidate.get_si();
                degree = static_cast<unsigned>(std::max(1l, clamped));
                analyze_note = json{{"degree_from_bound", degree},
                                    {"bound", to_string(candidate)}};
            }
        }

        const std::vector<std::string> names = loop.ring_names();
        std::vector<Monomial> monomials;
        if (opts.monomials_file) {
            for (const Polynomial& p : read_polynomial_list(*opts.monomials_file, loop)) {
                if (p.term_count() != 1 || p.terms().begin()->second != 1)
                    return env.input_error("monomial file entries must be single monic monomials");
                monomials.push_back(p.terms().begin()->first);
            }
            if (monomials.empty()) return env.input_error("monomial file is empty");
        } else {
            monomials = monomials_up_to_degree(loop.arity(), degree, MonomialOrder::degrevlex());
        }

        // Enough points: |monomials| + margin, preferring more instantiations
        // over deeper (coordinate-heavy) trajectories on parametric loops.
        const std::size_t needed = monomials.size() + opts.margin;
        SampleConfig cfg;
        cfg.mode = mode;
        cfg.depth = opts.depth;
        cfg.num_initials = opts.initials;
        cfg.seed = opts.seed;
        if (loop.parametric()) {
            // Many shallow trajectories beat deep ones: each instantiation
            // contributes only as many independent rows as the template has
            // exponential modes, so scale instantiations with the template.
            std::size_t want = std::max(needed / (cfg.depth + 1) + 2, monomials.size() / 3 + 2);
            if (!opts.initials_explicit) cfg.num_initials = std::max(cfg.num_initials, want);
        } else if (!opts.depth_explicit) {
            cfg.depth = std::max(cfg.depth, needed + 1);
        }
        std::vector<Point> points = sample_points(loop, cfg);
        for (int widen = 0; !opts.depth_explicit && points.size() < needed && widen < 4; ++widen) {
            cfg.depth *= 2;
            points = sample_points(loop, cfg);
        }

        InterpOptions options;
        options.max_images = opts.max_images;
        options.budget = budget_from(opts);

        InterpResult r;
        int attempts = 0;
        while (true) {
            SampleConfig fresh_cfg = cfg;
            fresh_cfg.depth = cfg.depth * 2;
            options.fresh_points = sample_points(loop, fresh_cfg);
            r = opts.engine == "direct"
                    ? plain_inv_interp(monomials, points, loop, mode, options)
                    : modp_inv_interp(monomials, points, loop, mode, options);
            // Parametric loops whose candidates die at the gate usually got
            // too few instantiations; widen and rerun.
            if (r.status == InterpStatus::fail_certification && loop.parametric() &&
                !opts.initials_explicit && attempts++ < 2) {
                cfg.num_initials *= 2;
                points = sample_points(loop, cfg);
                continue;
            }
            break;
        }

        json result = interp_result_to_json(r, loop);
        result["engine"] = opts.engine;
        result["mode"] = opts.mode;
        result["degree"] = degree;
        result["monomial_count"] = monomials.size();
        result["points_used"] = points.size();
        if (r.status == InterpStatus::fail_zero_dimension && loop.parametric()) {
            // A zero nullspace on a parametric loop often has a structural
            // explanation; attach the triviality verdict when one exists.
            try {
                AnalyzeReport rep = analyze_loop(loop, std::nullopt);
                if (rep.bounds)
                    result["analyze_cross_reference"] =
                        json{{"triviality", rep.bounds->triviality}};
            } catch (const std::exception&) {
            }
        }
        result["config_effective"] =
            json{{"depth", cfg.depth}, {"initials", cfg.num_initials}, {"seed", cfg.seed}};
        if (!analyze_note.is_null()) result["analyze_first"] = analyze_note;
        if (r.certified()) {
            GroebnerBasis gb = buchberger(r.basis, MonomialOrder::degrevlex(), options.budget);
            json jgb = json::array();
            for (const Polynomial& g : gb.generators()) jgb.push_back(g.to_string(names));
            result["reduced_groebner"] = jgb;
            result["ideal_dimension"] = ideal_dimension(gb);
        }

        int code = 0;
        switch (r.status) {
            case InterpStatus::certified: code = 0; break;
            case InterpStatus::fail_budget: code = 2; break;
            case InterpStatus::fail_mode: code = 3; break;
            default: code = 1; break;
        }
        return env.finish(std::move(result), to_string(r.status), code);
    } catch (const BudgetExceeded& e) {
        return env.finish(json{{"error", e.what()}}, "budget-exceeded", 2);
    } catch (const ExclusivityViolation& e) {
        return env.finish(json{{"error", e.what()}}, "exclusivity-violation", 1);
    } catch (const std::exception& e) {
        return env.input_error(e.what());
    }
}

RunReport run_check(const CliOptions& opts) {
    Envelope env("check", opts);
    try {
        LoopSystem loop = load_loop(opts, env);
        InvariantMode mode = invariant_mode_from_string(opts.mode);
        std::vector<Polynomial> candidates = read_polynomial_list(opts.invariants_file, loop);
        env.body["invariants_file"] = opts.invariants_file;

        json result;
        result["mode"] = opts.mode;
        result["candidates"] = json::array();
        for (const Polynomial& f : candidates)
            result["candidates"].push_back(f.to_string(loop.ring_names()));

        // Cheap falsifier first, then the membership gate.
        if (loop.supports(mode)) {
            SampleConfig cfg;
            cfg.mode = mode;
            cfg.depth = opts.depth;
            cfg.num_initials = opts.initials;
            cfg.seed = opts.seed;
            std::vector<Point> points = sample_points(loop, cfg);
            if (auto cex = falsify_by_samples(loop, candidates, points, mode)) {
                result["counterexample"] =
                    json{{"point", point_to_json(cex->point)},
                         {"branch", cex->branch_index},
                         {"candidate", cex->candidate_index}};
                CertificationReport cert;
                cert.status = CertStatus::failed_branch;
                cert.failed_branch_index = static_cast<int>(cex->branch_index);
                cert.detail = "refuted by a sampled point before certification";
                result["certification"] = certification_to_json(cert);
                return env.finish(std::move(result), to_string(cert.status), 1);
            }
        }

        CertificationReport cert = certify(loop, candidates, mode, budget_from(opts));
        result["certification"] = certification_to_json(cert);
        int code = 1;
        if (cert.status == CertStatus::certified) code = 0;
        if (cert.status == CertStatus::budget_exceeded) code = 2;
        if (cert.status == CertStatus::mode_unsupported) code = 3;
        return env.finish(std::move(result), to_string(cert.status), code);
    } catch (const std::exception& e) {
        return env.input_error(e.what());
    }
}

RunReport run_analyze(const CliOptions& opts) {
    Envelope env("analyze", opts);
    try {
        LoopSystem loop = load_loop(opts, env);
        std::optional<std::vector<std::vector<Integer>>> user_lattice;
        if (opts.lattice_file) user_lattice = read_lattice_file(*opts.lattice_file);
        AnalyzeReport rep = analyze_loop(loop, user_lattice);
        json result = analyze_report_to_json(rep, loop);
        return env.finish(std::move(result), rep.detection.supported() ? "ok" : "unsupported", 0);
    } catch (const BudgetExceeded& e) {
        return env.finish(json{{"error", e.what()}}, "budget-exceeded", 2);
    } catch (const std::exception& e) {
        return env.input_error(e.what());
    }
}

}  // namespace polyinv
