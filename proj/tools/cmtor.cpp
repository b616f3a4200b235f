// cmtor — verification CLI for torsion fields and mod-p Galois images of the
// rational CM elliptic curve classes.
#include "cmtor/galrep.hpp"
#include "cmtor/kernels.hpp"
#include "cmtor/tracecache.hpp"

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include <fstream>
#include <iostream>

using namespace cmtor;
using json = nlohmann::ordered_json;

namespace {

struct CurveSel {
    int D = 0, f = 1;
    long d = 1;
};

CurveModel resolve(const CurveSel& sel) {
    CurveModel E = curve_by_df(sel.D, sel.f);
    if (sel.d != 1) E = twist(E, ExactInt(sel.d));
    return E;
}

void add_curve_option(CLI::App* cmd, CurveSel& sel) {
    cmd->add_option_function<std::string>(
           "--curve",
           [&sel](const std::string& s) {
               CurveSel out;
               if (std::sscanf(s.c_str(), "%d,%d,%ld", &out.D, &out.f, &out.d) < 2)
                   throw CLI::ValidationError("--curve expects D,f[,d]");
               sel = out;
           },
           "curve selector D,f[,d] (Table entry twisted by d)")
        ->required();
}

void write_output(const std::string& text, const std::string& out_path) {
    if (out_path.empty()) {
        std::cout << text << "\n";
    } else {
        std::ofstream of(out_path, std::ios::binary);
        of << text << "\n";
    }
}

void persist_report(const std::string& cache_dir, const std::string& name,
                    const std::string& text) {
    if (cache_dir.empty()) return;
    auto dir = std::filesystem::path(cache_dir) / "reports";
    std::filesystem::create_directories(dir);
    std::ofstream of(dir / (name + ".json"), std::ios::binary);
    of << text << "\n";
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"torsion fields and mod-p Galois images of rational CM elliptic curves"};
    app.require_subcommand(1);

    std::string cache_flag;
    app.add_option("--cache-dir", cache_flag,
                   "trace cache directory (default: $CM_TORSION_CACHE)");

    // --- curves ---
    auto* curves = app.add_subcommand("curves", "curve table utilities");
    curves->require_subcommand(1);
    curves->add_subcommand("list", "print the 13 CM curve models");

    // --- divpoly ---
    auto* dp = app.add_subcommand("divpoly", "emit a division polynomial");
    CurveSel dp_sel;
    int dp_m = 2;
    std::string dp_out;
    add_curve_option(dp, dp_sel);
    dp->add_option("--m", dp_m, "torsion level m >= 2")->required();
    dp->add_option("--out", dp_out, "output file (default stdout)");

    // --- factor ---
    auto* fa = app.add_subcommand("factor", "factor a polynomial over Z");
    CurveSel fa_sel;
    int fa_m = 0;
    std::string fa_in, fa_out;
    std::uint64_t fa_seed = 0;
    fa->add_option("--in", fa_in, "polynomial JSON file");
    fa->add_option_function<std::string>(
        "--curve",
        [&fa_sel](const std::string& s) {
            if (std::sscanf(s.c_str(), "%d,%d,%ld", &fa_sel.D, &fa_sel.f, &fa_sel.d) < 2)
                throw CLI::ValidationError("--curve expects D,f[,d]");
        },
        "curve selector D,f[,d]");
    fa->add_option("--m", fa_m, "factor the m-division polynomial of --curve");
    fa->add_option("--out", fa_out, "output file (default stdout)");
    fa->add_option("--seed", fa_seed, "seed for randomized splitting");

    // --- trace ---
    auto* tr = app.add_subcommand("trace", "Frobenius traces over a prime range");
    CurveSel tr_sel;
    std::uint64_t tr_qmax = 1000;
    std::string tr_out;
    add_curve_option(tr, tr_sel);
    tr->add_option("--qmax", tr_qmax, "upper bound on q")->check(CLI::Range(100ull, 100000000ull));
    tr->add_option("--out", tr_out, "output file (default stdout)");

    // --- verify ---
    auto* ve = app.add_subcommand("verify", "run a lemma/theorem verification suite");
    std::string ve_id;
    VerifyOptions opt;
    std::vector<long> ve_twists;
    bool ve_163 = false, ve_67 = false;
    long ve_p = 0;
    std::string ve_out;
    ve->add_option("id", ve_id, "one of L4 L5 L6 T1 T2 T3")->required();
    ve->add_option("--qmax", opt.qmax, "trace sampling bound (default 10000)")
        ->check(CLI::Range(100ull, 100000000ull));
    ve->add_option("--prime-budget", opt.prime_budget, "field id prime budget (default 200)");
    ve->add_option("--seed", opt.seed, "run seed (default 0)");
    ve->add_option("--p", ve_p, "restrict to one bad prime");
    ve->add_option("--d", ve_twists, "twist list (default 1 -1 2 -3 5)");
    ve->add_flag("--enable-163", ve_163, "allow the degree-13284 stress computation");
    ve->add_flag("--include-67", ve_67, "include E(67,1) in L4");
    ve->add_option("--out", ve_out, "write the JSON bundle here");

    // --- image ---
    auto* im = app.add_subcommand("image", "classify the mod-p image for one curve");
    CurveSel im_sel;
    std::uint64_t im_p = 5, im_qmax = 10000, im_seed = 0;
    std::string im_out;
    add_curve_option(im, im_sel);
    im->add_option("--p", im_p, "odd prime p")->required();
    im->add_option("--qmax", im_qmax, "trace sampling bound")->check(CLI::Range(100ull, 100000000ull));
    im->add_option("--seed", im_seed, "run seed");
    im->add_option("--out", im_out, "output file (default stdout)");

    // --- report ---
    auto* re = app.add_subcommand("report", "aggregate cached JSON reports");
    std::string re_out;
    re->add_option("--out", re_out, "output file (default stdout)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : 1;
    }

    const std::string cache_dir = resolve_cache_dir(cache_flag);

    try {
        if (curves->parsed()) {
            std::cout << "  -D  f   model\n";
            for (const auto& E : cm_table()) {
                std::printf("%4d %2d   y^2 = x^3 %s %sx %s %s\n", -E.cm->D, E.cm->f,
                            E.a >= 0 ? "+" : "-", ExactRat(abs(ExactRat(E.a))).get_str().c_str(),
                            E.b >= 0 ? "+" : "-", ExactRat(abs(ExactRat(E.b))).get_str().c_str());
            }
            return 0;
        }

        if (dp->parsed()) {
            DivPolyEngine eng(resolve(dp_sel));
            if (dp_m > 200 && !(dp_sel.D == 163 && dp_m == 163))
                throw resource_limit_error("divpoly: m beyond 200 is out of the default suite");
            write_output(eng.big_psi(dp_m).to_json(), dp_out);
            return 0;
        }

        if (fa->parsed()) {
            ZPoly f;
            if (!fa_in.empty()) {
                std::ifstream in(fa_in);
                if (!in) throw std::runtime_error("cannot open " + fa_in);
                std::string text((std::istreambuf_iterator<char>(in)),
                                 std::istreambuf_iterator<char>());
                f = ZPoly::from_json(text);
            } else if (fa_m >= 2 && fa_sel.D) {
                if (fa_sel.D == 163 && fa_m == 163)
                    throw resource_limit_error(
                        "factor: Psi_163 has degree 13284; factoring it is out of scope "
                        "(--enable-163 only covers the divpoly computation)");
                DivPolyEngine eng(resolve(fa_sel));
                f = eng.big_psi(fa_m);
            } else {
                std::cerr << "factor: need --in or --curve with --m\n";
                return 1;
            }
            FactorConfig cfg;
            cfg.seed = fa_seed;
            FactorList fl = factor_z(f, cfg);
            json j;
            j["unit"] = fl.unit.get_str();
            json factors = json::array();
            for (const auto& [poly, mult] : fl.factors)
                factors.push_back({{"poly", json::parse(poly.to_json())}, {"mult", mult}});
            j["factors"] = factors;
            j["seed"] = fa_seed;
            write_output(j.dump(2), fa_out);
            return 0;
        }

        if (tr->parsed()) {
            CurveModel E = resolve(tr_sel);
            TraceCache cache(cache_dir);
            auto records = cache.traces(E, tr_qmax);
            std::ostringstream os;
            for (const auto& r : records) os << TraceCache::record_to_line(r) << "\n";
            std::string text = os.str();
            if (!text.empty()) text.pop_back();
            write_output(text, tr_out);
            return 0;
        }

        if (ve->parsed()) {
            if (ve_p == 163 && !ve_163) {
                std::cerr << "resource limit: Psi_163 has degree 13284 with huge coefficients; "
                             "rerun with --enable-163 to compute it\n";
                return 1;
            }
            opt.enable163 = ve_163;
            opt.include67 = ve_67;
            opt.only_p = ve_p;
            opt.cache_dir = cache_dir;
            if (!ve_twists.empty()) opt.twists = ve_twists;
            // pin the point-count conventions up front; throws if the
            // empirical normalization self-test fails
            pinned_convention(4);
            pinned_convention(6);
            ReportBundle rep = verify_by_id(ve_id, opt);
            for (const auto& c : rep.claims)
                std::cout << (c.pass ? "PASS " : "FAIL ") << rep.id << ": " << c.description
                          << (c.witness.empty() ? "" : "  [" + c.witness + "]") << "\n";
            std::string text = rep.to_json();
            if (!ve_out.empty()) write_output(text, ve_out);
            persist_report(cache_dir, rep.id + "_seed" + std::to_string(opt.seed), text);
            std::cout << (rep.pass() ? "OK" : "FAILED") << " " << rep.id << " ("
                      << rep.claims.size() << " claims)\n";
            return rep.pass() ? 0 : 2;
        }

        if (im->parsed()) {
            CurveModel E = resolve(im_sel);
            TraceCache cache(cache_dir);
            auto traces = cache.traces(E, im_qmax);
            ImageReport rep = classify_image(E, im_p, im_qmax, im_seed, &traces);
            std::string text = rep.to_json();
            write_output(text, im_out);
            persist_report(cache_dir,
                           "image_D" + std::to_string(im_sel.D) + "_f" + std::to_string(im_sel.f) +
                               "_d" + std::to_string(im_sel.d) + "_p" + std::to_string(im_p) +
                               "_seed" + std::to_string(im_seed),
                           text);
            return 0;
        }

        if (re->parsed()) {
            json merged = json::array();
            bool all_pass = true;
            auto dir = std::filesystem::path(cache_dir.empty() ? "." : cache_dir) / "reports";
            std::vector<std::filesystem::path> files;
            if (std::filesystem::exists(dir))
                for (const auto& e : std::filesystem::directory_iterator(dir))
                    if (e.path().extension() == ".json") files.push_back(e.path());
            std::sort(files.begin(), files.end());
            for (const auto& p : files) {
                std::ifstream in(p);
                json j = json::parse(in);
                bool pass = j.value("pass", true);
                all_pass = all_pass && pass;
                std::cout << (pass ? "PASS " : "FAIL ") << p.filename().string() << "\n";
                merged.push_back({{"file", p.filename().string()}, {"report", j}});
            }
            if (!re_out.empty()) write_output(merged.dump(2), re_out);
            return all_pass ? 0 : 2;
        }
    } catch (const resource_limit_error& e) {
        std::cerr << "resource limit: " << e.what() << "\n";
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 1;
}
