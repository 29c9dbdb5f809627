#pragma once

// Command-line front end. Exit codes: 0 success, 1 negative verdict or
// mathematical failure, 2 input error.

#include "io.hpp"
#include "pcgl.hpp"

#include <CLI11.hpp>

#include <ostream>
#include <string>
#include <vector>

namespace pcgl::cli {

namespace detail {

inline std::vector<Polynomial> parse_list(const PoissonPresentation& p, const std::vector<std::string>& exprs) {
    std::vector<Polynomial> out;
    for (const auto& e : exprs) out.push_back(p.parse(e));
    return out;
}

inline std::vector<std::string> split(const std::string& s, char sep) {
    std::vector<std::string> out;
    std::string cur;
    for (char c : s) {
        if (c == sep) {
            out.push_back(cur);
            cur.clear();
        } else {
            cur += c;
        }
    }
    out.push_back(cur);
    std::erase_if(out, [](const std::string& t) { return t.find_first_not_of(" \t") == std::string::npos; });
    return out;
}

inline const char* mark(bool ok) { return ok ? "✓" : "✗"; }

}  // namespace detail

inline int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Exact computations for Poisson-CGL extensions"};
    app.require_subcommand(1);

    std::string file;
    std::size_t level = 0;
    std::string expr, format = "json", modulo;
    std::vector<std::string> gens, chain;
    int degree_bound = -1;

    auto add_file = [&](CLI::App* c) { c->add_option("file", file, "presentation JSON")->required(); };
    auto add_level = [&](CLI::App* c) { c->add_option("--level,-k", level, "tower level (1-based)")->required(); };

    auto* check = app.add_subcommand("check", "verify the Poisson-CGL axioms");
    add_file(check);
    auto* th = app.add_subcommand("theta", "Poisson Cauchon map of an element");
    add_file(th);
    add_level(th);
    th->add_option("expr", expr)->required();
    auto* nor = app.add_subcommand("normal", "Poisson-normal element theta(a) X^s");
    add_file(nor);
    add_level(nor);
    nor->add_option("expr", expr)->required();
    auto* dc = app.add_subcommand("d", "d-element of a level");
    add_file(dc);
    add_level(dc);
    dc->add_option("--modulo", modulo, "generators of an ideal of R_{k-1}, separated by ';'");
    dc->add_option("--degree-bound", degree_bound, "denominator search bound");
    auto* hp = app.add_subcommand("hprimes", "enumerate Poisson H-primes");
    add_file(hp);
    hp->add_option("--format", format)->check(CLI::IsMember({"json", "dot"}));
    hp->add_option("--degree-bound", degree_bound, "d-element search bound");
    auto* cl = app.add_subcommand("closure", "Poisson closure of an ideal");
    add_file(cl);
    cl->add_option("-g", gens, "ideal generator")->required();
    auto* hc = app.add_subcommand("hcore", "largest torus-stable ideal inside an ideal");
    add_file(hc);
    hc->add_option("-g", gens, "ideal generator")->required();
    auto* ch = app.add_subcommand("chain", "report on a chain of ideals");
    add_file(ch);
    ch->add_option("--ideal", chain, "generators separated by ';' (repeat for each ideal)")->required();
    auto* ce = app.add_subcommand("center", "Poisson center of the torus after deleting derivations");
    add_file(ce);

    std::vector<std::string> argv(args.rbegin(), args.rend());
    try {
        app.parse(argv);
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return 0;
    } catch (const CLI::ParseError& e) {
        err << e.what() << "\n";
        return 2;
    }

    try {
        PoissonPresentation p = load_presentation(file);
        const int bound = degree_bound >= 0 ? degree_bound : p.bounds().degree;

        if (check->parsed()) {
            CGLReport r = verify_cgl(p);
            out << to_json(r, p.ring()).dump(2) << "\n";
            return r.pass() ? 0 : 1;
        }
        if (th->parsed() || nor->parsed() || dc->parsed()) {
            LevelData L = level_data(p, level);
            if (th->parsed()) {
                Polynomial a = rebase(p.parse(expr), L.ring);
                out << theta(L, a).str() << "\n";
                ThetaReport rep = check_theta(L, 20);
                out << "identities on " << rep.samples << " random pairs: " << detail::mark(rep.pass()) << "\n";
                return rep.pass() ? 0 : 1;
            }
            if (nor->parsed()) {
                Polynomial a = rebase(p.parse(expr), L.ring);
                NormalElement n = normal_element(L, a);
                out << n.x.str() << "\n";
                out << "poisson-normal: " << (n.certificate.normal ? "verified" : "failed") << "\n";
                out << "s = " << n.s << ", eta = " << to_string(n.eta) << "\n";
                out << "{x,X} = -eta*x*X: " << (n.eta_identity ? "verified" : "failed") << "\n";
                return n.certificate.normal && n.eta_identity ? 0 : 1;
            }
            Ideal Q = Ideal::zero(L.ring, p.groebner_options());
            if (!modulo.empty()) {
                std::vector<Polynomial> qs;
                for (const auto& g : detail::split(modulo, ';')) qs.push_back(rebase(p.parse(g), L.ring));
                Q = Ideal(L.ring, qs, p.groebner_options());
            }
            DSearch s = d_element_search(L, Q, bound);
            if (!s.d) {
                out << "no d-element found within degree bound " << bound << "\n";
                return 1;
            }
            out << s.d->str() << "\n";
            out << "σ(d)=λd " << detail::mark(s.identities.sigma) << ", δ(d)=-λd² " << detail::mark(s.identities.delta)
                << ", {d,g}=σ(g)d+δ(g) " << detail::mark(s.identities.bracket) << "\n";
            out << "unique: " << (s.unique ? "yes" : "no") << "\n";
            return s.identities.pass() ? 0 : 1;
        }
        if (hp->parsed()) {
            CGLReport r = verify_cgl(p);
            if (!r.pass()) {
                err << "presentation fails the Poisson-CGL axioms; run 'check' for details\n";
                return 1;
            }
            HPrimeTree t = enumerate_hprimes(p, bound);
            if (format == "dot") out << to_dot(t);
            else out << to_json(t).dump(2) << "\n";
            return t.all_checks_pass() ? 0 : 1;
        }
        if (cl->parsed()) {
            Ideal I(p.ring(), detail::parse_list(p, gens), p.groebner_options());
            out << to_json(poisson_closure(p.table(), I)).dump(2) << "\n";
            return 0;
        }
        if (hc->parsed()) {
            Ideal I(p.ring(), detail::parse_list(p, gens), p.groebner_options());
            Ideal core = h_core(p.grading(), I);
            Json j = {{"generators", to_json(core)}, {"equals_input", core == I}};
            out << j.dump(2) << "\n";
            return 0;
        }
        if (ch->parsed()) {
            std::vector<Ideal> ideals;
            for (const auto& spec : chain) {
                auto parts = detail::split(spec, ';');
                if (parts.size() == 1 && parts[0] == "0") parts.clear();
                ideals.emplace_back(p.ring(), detail::parse_list(p, parts), p.groebner_options());
            }
            out << to_json(chain_report(p, ideals)).dump(2) << "\n";
            return 0;
        }
        // center
        Json j;
        PoissonPresentation q = p;
        try {
            extract_log_matrix(p);
        } catch (const NotAPoissonAffineSpace&) {
            Deletion del = delete_all(p);
            if (!del.pass()) {
                err << "theta identities failed during deletion\n";
                return 1;
            }
            q = del.result;
            j["deleted_presentation"] = to_json(q);
        }
        LogBracketMatrix m = extract_log_matrix(q);
        TorusCenter c = poisson_center_torus(m);
        j["log_matrix"] = to_json(m);
        j["kernel_rank"] = c.rank();
        j["center"] = center_strings(q.ring(), c);
        j["center_commutes"] = center_commutes(q.ring(), m, c);
        return (out << j.dump(2) << "\n", j["center_commutes"].get<bool>() ? 0 : 1);
    } catch (const InputError& e) {
        err << "input error: " << e.what() << "\n";
        return 2;
    } catch (const ContextMismatch& e) {
        err << "input error: " << e.what() << "\n";
        return 2;
    } catch (const Error& e) {
        err << "error: " << e.what() << "\n";
        return 1;
    }
}

}  // namespace pcgl::cli
