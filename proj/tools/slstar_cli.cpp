#include <iostream>

#include <CLI11.hpp>

#include "slstar/adelic.hpp"
#include "slstar/experiments.hpp"
#include "slstar/sl_star.hpp"
#include "slstar/star_euclid.hpp"
#include "slstar/sweeps.hpp"
#include "slstar/table_ring.hpp"

using namespace slstar;

namespace {

int finish(const Report& r, const std::string& out_dir, bool write_file) {
    std::cout << r.render();
    if (write_file) {
        std::string path = write_report(r, out_dir);
        std::cout << "written: " << path << "\n";
    }
    return r.exit_code();
}

AdelicContext make_context(const std::string& base, uint64_t n) {
    if (base == "Q") return AdelicContext{AdelicBase::RationalField, n, 0, 2};
    if (base == "QuatFF") return AdelicContext{AdelicBase::QuatFunctionField, n, 0, 2};
    if (base == "QuatQ") return AdelicContext{AdelicBase::QuatRationalField, n, 0, 2};
    if (base.rfind("Quad(Q,", 0) == 0 && base.back() == ')') {
        int64_t d = std::stoll(base.substr(7, base.size() - 8));
        return AdelicContext{AdelicBase::QuadField, n, d, 2};
    }
    throw UsageError("unknown adelic base '" + base + "' (use Q, Quad(Q,d), QuatFF, QuatQ)");
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"computational workbench for rings with involution, *-Euclidean division "
                 "and SL_* groups"};
    app.require_subcommand(1);

    uint64_t seed = 42;
    std::string out_dir = "./reports";
    bool serial = false;
    app.add_option("--seed", seed, "seed for all randomized searches (default 42)");
    app.add_option("--out", out_dir, "directory for report files (default ./reports)");
    app.add_flag("--serial", serial, "disable the parallel kernels");

    // ring selftest
    auto* ring_cmd = app.add_subcommand("ring", "ring-level commands");
    ring_cmd->require_subcommand(1);
    auto* selftest = ring_cmd->add_subcommand("selftest", "run the ring invariant suite");
    std::string st_desc;
    uint64_t st_samples = 10000;
    selftest->add_option("descriptor", st_desc)->required();
    selftest->add_option("--samples", st_samples);

    auto* classify = app.add_subcommand("classify", "classify a ring as 1- or 2-local");
    std::string cl_desc;
    classify->add_option("descriptor", cl_desc)->required();

    auto* div_cmd = app.add_subcommand("divide", "one *-Euclidean division step");
    std::string dv_desc, dv_a, dv_c;
    div_cmd->add_option("descriptor", dv_desc)->required();
    div_cmd->add_option("a", dv_a)->required();
    div_cmd->add_option("c", dv_c)->required();

    auto* sl_cmd = app.add_subcommand("slstar", "SL_* group commands");
    sl_cmd->require_subcommand(1);
    std::string sl_desc, sl_arg;
    uint64_t sl_cap = 10000000;
    auto* sl_check = sl_cmd->add_subcommand("check", "verify the defining relations");
    sl_check->add_option("descriptor", sl_desc)->required();
    sl_check->add_option("g", sl_arg)->required();
    auto* sl_factor = sl_cmd->add_subcommand("factor", "factor into a Bruhat word");
    sl_factor->add_option("descriptor", sl_desc)->required();
    sl_factor->add_option("g", sl_arg)->required();
    auto* sl_closure = sl_cmd->add_subcommand("closure", "Bruhat closure size");
    sl_closure->add_option("descriptor", sl_desc)->required();
    sl_closure->add_option("--cap", sl_cap);
    auto* sl_enum = sl_cmd->add_subcommand("enumerate", "direct group enumeration");
    sl_enum->add_option("descriptor", sl_desc)->required();
    sl_enum->add_option("--cap", sl_cap);

    auto* ad_cmd = app.add_subcommand("adelic", "adelic matrix commands");
    ad_cmd->require_subcommand(1);
    std::string ad_base, ad_a, ad_c;
    uint64_t ad_n = 2;
    int64_t ad_d = -1;
    uint64_t ad_p = 5;
    auto* ad_div = ad_cmd->add_subcommand("divide", "adelic division with verification");
    ad_div->add_option("base", ad_base)->required();
    ad_div->add_option("a", ad_a)->required();
    ad_div->add_option("c", ad_c)->required();
    ad_div->add_option("--n", ad_n);
    auto* ad_split = ad_cmd->add_subcommand("split", "splitting type of a prime in Q(sqrt d)");
    ad_split->add_option("d", ad_d)->required();
    ad_split->add_option("p", ad_p)->required();
    auto* ad_inv = ad_cmd->add_subcommand("involute", "componentwise involution");
    ad_inv->add_option("base", ad_base)->required();
    ad_inv->add_option("a", ad_a)->required();
    ad_inv->add_option("--n", ad_n);

    auto* exp_cmd = app.add_subcommand("experiment", "run a canned experiment");
    std::string exp_name;
    exp_cmd->add_option("name", exp_name)->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e) ? 3 : 3;
    }

    try {
        if (*selftest) return finish(ring_selftest(st_desc, st_samples, seed), out_dir, false);
        if (*classify) return finish(classify_report(cl_desc), out_dir, false);
        if (*div_cmd) return finish(divide_report(dv_desc, dv_a, dv_c, seed), out_dir, false);

        if (*sl_check || *sl_factor) {
            const Ring& G = group_ring(parse_descriptor(sl_desc));
            Element g = parse_element(G, sl_arg);
            Report r;
            r.experiment = *sl_check ? "slstar-check" : "slstar-factor";
            r.descriptor = sl_desc;
            r.seed = seed;
            r.command = "slstar slstar " + std::string(*sl_check ? "check" : "factor") + " \"" +
                        sl_desc + "\" \"" + sl_arg + "\"";
            r.property = "the defining relations of SL_*(2,A)";
            auto viol = sl_star_violation(g);
            r.add("is-sl-star", viol ? "no" : "yes");
            if (viol) r.add("violation", *viol);
            if (!viol)
                if (auto delta = multiplier(g)) r.add("multiplier", format(*delta));
            if (*sl_factor) {
                if (viol) {
                    r.fail("not an SL_* element");
                } else {
                    try {
                        BruhatWord w = factor(g, seed);
                        r.add("word", serialize_word(w));
                        r.add("roundtrip", eval_word(G, w) == g ? "exact" : "failed");
                    } catch (const DivideError& e) {
                        r.expected_refusal = true;
                        r.add("refusal", e.what());
                    }
                }
            }
            r.pass = r.pass && (!*sl_check || !viol);
            return finish(r, out_dir, false);
        }
        if (*sl_closure || *sl_enum) {
            const Ring& A = ring_for(sl_desc);
            Report r;
            r.experiment = *sl_closure ? "slstar-closure" : "slstar-enumerate";
            r.descriptor = sl_desc;
            r.seed = seed;
            r.command = "slstar slstar " + std::string(*sl_closure ? "closure" : "enumerate") +
                        " \"" + sl_desc + "\"";
            r.property = "Bruhat generation of SL_*(2,A)";
            GroupSet s = *sl_closure ? closure_bfs_packed(A, sl_cap, !serial)
                                     : enumerate_sl_star_packed(A, sl_cap, !serial);
            r.add_count("order", s.elems.size());
            r.add("complete", s.complete ? "yes" : "no (cap exceeded)");
            if (*sl_closure) {
                GroupSet full = enumerate_sl_star_packed(A, sl_cap, !serial);
                r.add_count("group-order", full.elems.size());
                r.add("generates", s.elems == full.elems ? "yes" : "no");
            }
            r.pass = s.complete;
            return finish(r, out_dir, false);
        }

        if (*ad_split) {
            Report r;
            r.experiment = "adelic-split";
            r.command = "slstar adelic split " + std::to_string(ad_d) + " " +
                        std::to_string(ad_p);
            r.property = "splitting of a rational prime in a quadratic extension";
            r.add("splitting", splitting_name(quad_splitting(ad_d, BigInt(ad_p))));
            return finish(r, out_dir, false);
        }
        if (*ad_div || *ad_inv) {
            AdelicContext ctx = make_context(ad_base, ad_n);
            Report r;
            r.experiment = *ad_div ? "adelic-divide" : "adelic-involute";
            r.descriptor = ctx.str();
            r.seed = seed;
            r.property = "finite-support restricted-product arithmetic";
            AdelicMatrix a = parse_adelic(ctx, ad_a);
            if (*ad_inv) {
                r.command = "slstar adelic involute " + ad_base + " '" + ad_a + "'";
                r.add("result", adelic_involute(a).str());
                return finish(r, out_dir, false);
            }
            r.command = "slstar adelic divide " + ad_base + " '" + ad_a + "' '" + ad_c + "'";
            AdelicMatrix c = parse_adelic(ctx, ad_c);
            try {
                if (ctx.base == AdelicBase::QuatFunctionField ||
                    ctx.base == AdelicBase::QuatRationalField) {
                    auto outcome = quat_adelic_divide(a, c, seed);
                    if (outcome.refusal) {
                        r.expected_refusal = true;
                        r.add("refusal", "not *-Euclidean in characteristic 0");
                        r.add("witness-a", format(outcome.refusal->witness_a));
                        r.add("witness-c", format(outcome.refusal->witness_c));
                        r.add("truncation", outcome.refusal->truncation);
                        r.add_count("truncation-unit-remainders",
                                    outcome.refusal->certificate.unit_remainders);
                    } else {
                        r.add("s", outcome.division->s.str());
                        r.add("r", outcome.division->r.str());
                    }
                } else if (ctx.base == AdelicBase::QuadField) {
                    auto div = quad_adelic_divide(a, c, seed);
                    r.add("s", div.s.str());
                    r.add("r", div.r.str());
                } else {
                    auto div = adelic_divide(a, c, seed);
                    r.add("s", div.s.str());
                    r.add("r", div.r.str());
                }
            } catch (const TailUnsolved& e) {
                r.fail(std::string("tail unsolved: ") + e.what());
            } catch (const DivideError& e) {
                r.expected_refusal = true;
                r.add("refusal", e.what());
            }
            return finish(r, out_dir, false);
        }

        if (*exp_cmd) {
            Report r = run_experiment(exp_name, seed, !serial);
            return finish(r, out_dir, true);
        }
    } catch (const ParseError& e) {
        std::cerr << "parse error: " << e.what() << "\n";
        return 3;
    } catch (const UsageError& e) {
        std::cerr << "usage error: " << e.what() << "\n";
        return 3;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return 3;
}
