// Command-line front end: every library operation behind a subcommand, with
// machine-readable JSON (or CSV for tabular experiments) on stdout.
// Exit codes: 0 success, 2 usage error, 3 numeric/domain error.

#include <cstdio>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "brjuno/brjuno_complex.hpp"
#include "brjuno/cf_complex.hpp"
#include "brjuno/cf_real.hpp"
#include "brjuno/dilog.hpp"
#include "brjuno/mobius.hpp"
#include "brjuno/operators.hpp"
#include "brjuno/rational.hpp"

namespace {

// Deterministic JSON emission with fixed 17-significant-digit numbers.
std::string num(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

struct Json {
    std::ostringstream os;
    bool first = true;
    Json() { os << "{"; }
    void sep() { if (!first) os << ","; first = false; }
    Json& field(const std::string& k, const std::string& raw) {
        sep(); os << "\"" << k << "\":" << raw; return *this;
    }
    Json& str(const std::string& k, const std::string& v) {
        return field(k, "\"" + v + "\"");
    }
    Json& real(const std::string& k, double v) { return field(k, num(v)); }
    Json& integer(const std::string& k, long long v) { return field(k, std::to_string(v)); }
    Json& boolean(const std::string& k, bool v) { return field(k, v ? "true" : "false"); }
    Json& complex(const std::string& k, brjuno::Complex z) {
        return field(k, "{\"re\":" + num(z.real()) + ",\"im\":" + num(z.imag()) + "}");
    }
    std::string done() { return os.str() + "}"; }
};

std::string vec_to_json(const std::vector<std::int64_t>& v) {
    std::string s = "[";
    for (std::size_t i = 0; i < v.size(); ++i) {
        if (i) s += ",";
        s += std::to_string(v[i]);
    }
    return s + "]";
}

std::string vec_to_json(const std::vector<double>& v) {
    std::string s = "[";
    for (std::size_t i = 0; i < v.size(); ++i) {
        if (i) s += ",";
        s += num(v[i]);
    }
    return s + "]";
}

brjuno::Rational parse_fraction(const std::string& s) {
    auto slash = s.find('/');
    if (slash == std::string::npos)
        return brjuno::reduce(std::stoll(s), 1);
    return brjuno::reduce(std::stoll(s.substr(0, slash)), std::stoll(s.substr(slash + 1)));
}

brjuno::CutSide parse_side(const std::string& s) {
    if (s == "above") return brjuno::CutSide::above;
    if (s == "below") return brjuno::CutSide::below;
    if (s == "off" || s.empty()) return brjuno::CutSide::off;
    throw CLI::ValidationError("side must be above|below|off");
}

} // namespace

int main(int argc, char** argv) {
    using namespace brjuno;
    CLI::App app{"Brjuno function toolkit"};
    app.require_subcommand(1);
    long long seed = 0;
    app.add_option("--seed", seed, "seed recorded in output metadata");

    // ---- real ----
    auto* c_real = app.add_subcommand("real", "real Brjuno function B(x)");
    double real_x = 0.0; int real_depth = 64; double real_tol = 0.0;
    c_real->add_option("x", real_x)->required();
    c_real->add_option("--depth", real_depth);
    c_real->add_option("--tol", real_tol);

    // ---- finite ----
    auto* c_fin = app.add_subcommand("finite", "truncated Brjuno sum at a rational");
    std::string fin_r;
    c_fin->add_option("p/q", fin_r)->required();

    // ---- cf ----
    auto* c_cf = app.add_subcommand("cf", "real continued fraction expansion");
    double cf_x = 0.0; int cf_depth = 40; double cf_tol = 0.0;
    c_cf->add_option("x", cf_x)->required();
    c_cf->add_option("--depth", cf_depth);
    c_cf->add_option("--tol", cf_tol);

    // ---- ccf ----
    auto* c_ccf = app.add_subcommand("ccf", "complex continued fraction expansion");
    double ccf_re = 0.0, ccf_im = 0.0; int ccf_depth = 40;
    c_ccf->add_option("re", ccf_re)->required();
    c_ccf->add_option("im", ccf_im)->required();
    c_ccf->add_option("--depth", ccf_depth);

    // ---- dilog / phi0 / phi1 ----
    double z_re = 0.0, z_im = 0.0; std::string side_str = "off";
    auto* c_dilog = app.add_subcommand("dilog", "complex dilogarithm");
    c_dilog->add_option("re", z_re)->required();
    c_dilog->add_option("im", z_im)->required();
    c_dilog->add_option("--side", side_str);
    auto* c_phi0 = app.add_subcommand("phi0", "seed function phi0");
    c_phi0->add_option("re", z_re)->required();
    c_phi0->add_option("im", z_im)->required();
    c_phi0->add_option("--side", side_str);
    auto* c_phi1 = app.add_subcommand("phi1", "seed function phi1");
    c_phi1->add_option("re", z_re)->required();
    c_phi1->add_option("im", z_im)->required();
    c_phi1->add_option("--side", side_str);

    // ---- complex ----
    auto* c_cplx = app.add_subcommand("complex", "complex Brjuno function");
    double cx_re = 0.0, cx_im = 0.0;
    std::string method = "farey";
    int qmax = 600, depth = 24, mmax = 400, nmax = 10;
    double window = 3.0;
    c_cplx->add_option("re", cx_re)->required();
    c_cplx->add_option("im", cx_im)->required();
    c_cplx->add_option("--method", method, "farey|monoid");
    c_cplx->add_option("--qmax", qmax);
    c_cplx->add_option("--window", window);
    c_cplx->add_option("--depth", depth);
    c_cplx->add_option("--mmax", mmax);
    c_cplx->add_option("--nmax", nmax);

    // ---- jump ----
    auto* c_jump = app.add_subcommand("jump", "jump of Re B at a rational");
    std::string jump_r = "1/2";
    double jump_delta = 1e-3;
    int jump_qmax = 1000;
    std::vector<double> jump_etas = {0.02, 0.012, 0.007, 0.004};
    c_jump->add_option("p/q", jump_r)->required();
    c_jump->add_option("--delta", jump_delta);
    c_jump->add_option("--qmax", jump_qmax);
    c_jump->add_option("--etas", jump_etas);

    // ---- cell ----
    auto* c_cell = app.add_subcommand("cell", "continued-fraction cell of a strip point");
    double cl_re = 0.0, cl_im = 0.0; int cl_maxk = 64;
    c_cell->add_option("re", cl_re)->required();
    c_cell->add_option("im", cl_im)->required();
    c_cell->add_option("--maxk", cl_maxk);

    // ---- t510 ----
    auto* c_t510 = app.add_subcommand("t510", "cellwise decomposition of Im B");
    double t5_re = 0.0, t5_im = 0.0; int t5_qmax = 1200;
    c_t510->add_option("re", t5_re)->required();
    c_t510->add_option("im", t5_im)->required();
    c_t510->add_option("--qmax", t5_qmax);

    // ---- boundary ----
    auto* c_bnd = app.add_subcommand("boundary", "boundary approach experiment (CSV)");
    double bd_alpha = 0.0, bd_param = 2.0;
    std::string bd_path = "vertical";
    std::vector<double> bd_heights = {1e-1, 1e-2, 1e-3, 1e-4};
    int bd_qmax = 1000;
    c_bnd->add_option("alpha", bd_alpha)->required();
    c_bnd->add_option("--path", bd_path, "vertical|wh|wtilde");
    c_bnd->add_option("--param", bd_param);
    c_bnd->add_option("--heights", bd_heights);
    c_bnd->add_option("--qmax", bd_qmax);

    // ---- spectral ----
    auto* c_spec = app.add_subcommand("spectral", "transfer-operator contraction estimate");
    int sp_k = 12, sp_n = 100000;
    std::string sp_norm = "l2";
    c_spec->add_option("--k", sp_k);
    c_spec->add_option("--n", sp_n);
    c_spec->add_option("--norm", sp_norm, "l2|weighted");

    // ---- monoid ----
    auto* c_mono = app.add_subcommand("monoid", "monoid membership / factorization / enumeration");
    std::string mono_op = "member";
    std::vector<long long> mono_entries;
    int mono_maxlen = 3; long long mono_maxden = 10;
    c_mono->add_option("op", mono_op, "member|factor|enumerate")->required();
    c_mono->add_option("--matrix", mono_entries, "a b c d");
    c_mono->add_option("--maxlen", mono_maxlen);
    c_mono->add_option("--maxden", mono_maxden);

    // ---- cocycle ----
    auto* c_coc = app.add_subcommand("cocycle", "Brjuno cocycle value (f = -log)");
    std::vector<long long> coc_entries;
    double coc_x = 0.0, coc_nu = 1.0;
    c_coc->add_option("--matrix", coc_entries, "a b c d")->required()->expected(4);
    c_coc->add_option("x", coc_x)->required();
    c_coc->add_option("--nu", coc_nu);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    try {
        if (*c_real) {
            auto res = brjuno_real(real_x, real_depth, real_tol);
            Json j;
            j.str("command", "real").real("input", real_x).real("value", res.value)
             .real("tail", res.tail_bound)
             .field("meta", Json().integer("terms", res.terms_used)
                                  .boolean("terminated", res.terminated)
                                  .integer("seed", seed).done());
            std::cout << j.done() << "\n";
        } else if (*c_fin) {
            Rational r = parse_fraction(fin_r);
            Json j;
            j.str("command", "finite").str("input", r.str())
             .real("value", brjuno_finite(r)).real("tail", 0.0)
             .field("meta", Json().integer("seed", seed).done());
            std::cout << j.done() << "\n";
        } else if (*c_cf) {
            RealCF cf = expand_cf(cf_x, cf_depth, cf_tol);
            Json j;
            j.str("command", "cf").real("input", cf_x)
             .field("value", Json().integer("a0", cf.a0)
                                   .field("quotients", vec_to_json(cf.quotients))
                                   .field("p", vec_to_json(cf.p))
                                   .field("q", vec_to_json(cf.q))
                                   .field("residues", vec_to_json(cf.residues))
                                   .field("beta", vec_to_json(cf.beta))
                                   .boolean("terminated", cf.terminated).done())
             .real("tail", 0.0)
             .field("meta", Json().integer("seed", seed).done());
            std::cout << j.done() << "\n";
        } else if (*c_ccf) {
            ComplexCF cf = ccf_expand(Complex(ccf_re, ccf_im), ccf_depth);
            std::string stop = cf.stop == CcfStop::hit_zero ? "hit_zero"
                             : cf.stop == CcfStop::left_D ? "left_D" : "depth_cap";
            std::vector<double> zre, zim;
            for (auto& z : cf.z) { zre.push_back(z.real()); zim.push_back(z.imag()); }
            Json j;
            j.str("command", "ccf")
             .complex("input", Complex(ccf_re, ccf_im))
             .field("value", Json().field("m", vec_to_json(cf.m))
                                   .field("p", vec_to_json(cf.p))
                                   .field("q", vec_to_json(cf.q))
                                   .field("z_re", vec_to_json(zre))
                                   .field("z_im", vec_to_json(zim))
                                   .str("stop", stop)
                                   .boolean("boundary_tie", cf.boundary_tie).done())
             .real("tail", 0.0)
             .field("meta", Json().integer("seed", seed).done());
            std::cout << j.done() << "\n";
        } else if (*c_dilog || *c_phi0 || *c_phi1) {
            CutSide side = parse_side(side_str);
            Complex z(z_re, z_im), v;
            std::string name = *c_dilog ? "dilog" : (*c_phi0 ? "phi0" : "phi1");
            if (*c_dilog) v = li2(z, side);
            else if (*c_phi0) v = phi0(z, side);
            else v = phi1(z, side);
            Json j;
            j.str("command", name).complex("input", z).complex("value", v).real("tail", 0.0)
             .field("meta", Json().str("side", side_str).integer("seed", seed).done());
            std::cout << j.done() << "\n";
        } else if (*c_cplx) {
            BrjunoEval ev;
            if (method == "farey") ev = brjuno_farey(Complex(cx_re, cx_im), qmax, window);
            else if (method == "monoid") ev = brjuno_monoid(Complex(cx_re, cx_im), depth, mmax, nmax);
            else throw CLI::ValidationError("method must be farey|monoid");
            Json j;
            j.str("command", "complex").complex("input", Complex(cx_re, cx_im))
             .complex("value", ev.value).real("tail", ev.tail_estimate)
             .field("meta", Json().str("method", method)
                                  .integer("truncation", ev.truncation)
                                  .real("window", ev.window)
                                  .integer("terms", ev.terms_used)
                                  .integer("seed", seed).done());
            std::cout << j.done() << "\n";
        } else if (*c_jump) {
            Rational r = parse_fraction(jump_r);
            JumpReport rep = measure_jump(r, jump_delta, jump_etas, jump_qmax);
            Json j;
            j.str("command", "jump").str("input", r.str())
             .real("value", rep.jump_estimate).real("tail", 0.0)
             .field("meta", Json().real("delta", rep.delta)
                                  .real("theta_slope", rep.theta_slope)
                                  .real("expected", kPi / static_cast<double>(r.den))
                                  .integer("qmax", jump_qmax)
                                  .integer("seed", seed).done());
            std::cout << j.done() << "\n";
        } else if (*c_cell) {
            HCell cell = locate_H_cell(Complex(cl_re, cl_im), cl_maxk);
            Json j;
            j.str("command", "cell").complex("input", Complex(cl_re, cl_im))
             .field("value", Json().integer("n", cell.n)
                                   .field("word", vec_to_json(cell.word))
                                   .integer("p_k", cell.p.back())
                                   .integer("q_k", cell.q.back())
                                   .complex("z_k", cell.residues.back()).done())
             .real("tail", 0.0)
             .field("meta", Json().integer("seed", seed).done());
            std::cout << j.done() << "\n";
        } else if (*c_t510) {
            Theorem510Report rep = theorem510_decompose(Complex(t5_re, t5_im), t5_qmax);
            Json j;
            j.str("command", "t510").complex("input", Complex(t5_re, t5_im))
             .field("value", Json().real("b_finite", rep.b_finite)
                                   .real("principal", rep.principal)
                                   .real("remainder", rep.remainder)
                                   .real("bound", rep.bound)
                                   .real("im_b", rep.im_b).done())
             .real("tail", rep.tail)
             .field("meta", Json().integer("n", rep.cell.n)
                                  .field("word", vec_to_json(rep.cell.word))
                                  .integer("q_k", rep.cell.q.back())
                                  .integer("seed", seed).done());
            std::cout << j.done() << "\n";
        } else if (*c_bnd) {
            PathKind kind = bd_path == "vertical" ? PathKind::vertical
                          : bd_path == "wh" ? PathKind::W_H
                          : bd_path == "wtilde" ? PathKind::W_tilde_h
                          : throw CLI::ValidationError("path must be vertical|wh|wtilde");
            BoundaryReport rep =
                boundary_limit_experiment(bd_alpha, kind, bd_param, bd_heights, bd_qmax);
            std::cout << "w_re,w_im,im_b,abs_error\n";
            for (const auto& row : rep.rows) {
                std::cout << num(row.w.real()) << "," << num(row.w.imag()) << ","
                          << num(row.im_b) << "," << num(row.error) << "\n";
            }
        } else if (*c_spec) {
            GridNorm which = sp_norm == "weighted" ? GridNorm::weighted : GridNorm::L2;
            RealGridFn f = RealGridFn::constant(1.0, sp_n);
            double est = spectral_radius_estimate(f, sp_k, which);
            Json j;
            j.str("command", "spectral").real("input", 1.0).real("value", est).real("tail", 0.0)
             .field("meta", Json().integer("k", sp_k).integer("n", sp_n)
                                  .str("norm", sp_norm).integer("seed", seed).done());
            std::cout << j.done() << "\n";
        } else if (*c_mono) {
            if (mono_op == "enumerate") {
                auto all = enumerate_monoid(mono_maxlen, mono_maxden);
                std::string words = "[";
                for (std::size_t i = 0; i < all.size(); ++i) {
                    if (i) words += ",";
                    words += vec_to_json(all[i].first.letters);
                }
                words += "]";
                Json j;
                j.str("command", "monoid_enumerate").integer("input", mono_maxlen)
                 .field("value", words).real("tail", 0.0)
                 .field("meta", Json().integer("maxden", mono_maxden)
                                      .integer("count", static_cast<long long>(all.size()))
                                      .integer("seed", seed).done());
                std::cout << j.done() << "\n";
            } else {
                if (mono_entries.size() != 4)
                    throw CLI::ValidationError("--matrix needs 4 entries a b c d");
                Mat2Z g{mono_entries[0], mono_entries[1], mono_entries[2], mono_entries[3]};
                if (mono_op == "member") {
                    Json j;
                    j.str("command", "monoid_member")
                     .field("input", vec_to_json(std::vector<std::int64_t>(
                                mono_entries.begin(), mono_entries.end())))
                     .boolean("value", monoid_member(g)).real("tail", 0.0)
                     .field("meta", Json().boolean("even_member", even_monoid_member(g))
                                          .integer("seed", seed).done());
                    std::cout << j.done() << "\n";
                } else if (mono_op == "factor") {
                    MonoidWord w = factorize(g);
                    Json j;
                    j.str("command", "monoid_factor")
                     .field("input", vec_to_json(std::vector<std::int64_t>(
                                mono_entries.begin(), mono_entries.end())))
                     .field("value", vec_to_json(w.letters)).real("tail", 0.0)
                     .field("meta", Json().str("rational", monoid_to_rational(w).str())
                                          .integer("seed", seed).done());
                    std::cout << j.done() << "\n";
                } else {
                    throw CLI::ValidationError("op must be member|factor|enumerate");
                }
            }
        } else if (*c_coc) {
            Mat2Z g{coc_entries[0], coc_entries[1], coc_entries[2], coc_entries[3]};
            double v = cocycle_eval([](double x) { return -std::log(x); }, g, coc_x, coc_nu);
            Json j;
            j.str("command", "cocycle")
             .field("input", vec_to_json(std::vector<std::int64_t>(
                        coc_entries.begin(), coc_entries.end())))
             .real("value", v).real("tail", 0.0)
             .field("meta", Json().real("x", coc_x).real("nu", coc_nu)
                                  .integer("seed", seed).done());
            std::cout << j.done() << "\n";
        }
    } catch (const CLI::ValidationError& e) {
        std::cerr << "usage error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 3;
    }
    return 0;
}
