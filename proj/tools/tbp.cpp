// Command-line front end: verified search runs, Hessian certificates,
// constant tables, box inspection, and log audits.
//
// Exit codes: 0 success with certificate, 1 failure (unhalted, invalid
// certificate, audit failures), 2 usage, 3 guard fault (poisoned run).

#include <CLI11.hpp>

#include <cstdio>
#include <fstream>
#include <iostream>

#include "tbp/hessian.hpp"
#include "tbp/hexfloat.hpp"
#include "tbp/search.hpp"

namespace {

// "2^-13" or a plain power of two like 0.0001220703125.
int parseEpsPow(const std::string& s) {
    int p = 0;
    if (std::sscanf(s.c_str(), "2^-%d", &p) == 1) return p;
    const double v = tbp::parseHexDouble(s);
    const double l = -std::log2(v);
    p = static_cast<int>(l + 0.5);
    if (std::ldexp(1.0, -p) != v) throw tbp::Fault("eps must be a power of two: " + s);
    return p;
}

void printConstants(int e) {
    const auto m = tbp::tbpEnergy(e);
    const auto t = tbp::tetraEnergy(e);
    std::cout << "M_" << e << "      = " << tbp::hexInterval(m) << "  ~ " << m.mid() << "\n";
    std::cout << "T_" << e << "      = " << tbp::hexInterval(t) << "  ~ " << t.mid() << "\n";
    std::cout << "M_" << e << "-T_" << e << "  = " << tbp::hexInterval(m - t) << "  ~ "
              << (m - t).mid() << "\n";

    std::cout << "\nLambda table (eps = max(0,L1)+L2 at separation R):\n";
    const double rs[] = {0.25, 0.5, 1.0, 1.5, 2.0};
    for (const bool segment : {true, false}) {
        std::cout << (segment ? "segment" : "square (extents 2)") << ":\n";
        for (const double r : rs) {
            tbp::Patch q = segment ? tbp::Patch::rootSegment() : tbp::Patch::rootSquare();
            if (!segment) {
                // depth-1 quadrant square: extents reach 2 on both axes
                q = q.quarters()[2];
            }
            const auto l =
                tbp::lambdas<tbp::Interval>(q, tbp::Interval::point(r), e);
            std::cout << "  R=" << r << "  L1=" << tbp::hexInterval(l.lambda1)
                      << "  L2=" << tbp::hexInterval(l.lambda2) << "\n";
        }
    }
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"certified five-point energy verification"};
    app.require_subcommand(1);

    // verify
    auto* verify = app.add_subcommand("verify", "run the divide-and-conquer search");
    int e = 2;
    std::string epsStr = "2^-13";
    std::string modeStr = "interval";
    int workers = 1;
    std::string out, checkpoint, resume;
    std::uint64_t checkpointEvery = 0, maxBoxes = 0;
    verify->add_option("--e", e, "exponent (1 or 2)")->check(CLI::IsMember({1, 2}));
    verify->add_option("--eps", epsStr, "confinement side, e.g. 2^-13");
    verify->add_option("--mode", modeStr, "float | interval | hybrid")
        ->check(CLI::IsMember({"float", "interval", "hybrid"}));
    verify->add_option("--workers", workers, "worker thread count");
    verify->add_option("--out", out, "elimination log path");
    verify->add_option("--checkpoint", checkpoint, "checkpoint file to write");
    verify->add_option("--checkpoint-every", checkpointEvery,
                       "examinations between checkpoints");
    verify->add_option("--resume", resume, "checkpoint file to resume from");
    verify->add_option("--max-boxes", maxBoxes, "stop after this many examinations");

    // hessian-cert
    auto* hess = app.add_subcommand("hessian-cert", "emit the local-minimum certificate");
    int he = 1;
    std::string hout;
    hess->add_option("--e", he, "exponent (1 or 2)")->check(CLI::IsMember({1, 2}));
    hess->add_option("--out", hout, "certificate file (default stdout)");

    // constants
    auto* consts = app.add_subcommand("constants", "print the certified energy constants");
    int ce = 2;
    consts->add_option("--e", ce, "exponent (1 or 2)")->check(CLI::IsMember({1, 2}));

    // inspect-box
    auto* inspect = app.add_subcommand("inspect-box", "print every test on one box");
    std::string key;
    int ie = 2;
    std::string ieps = "2^-13";
    inspect->add_option("--key", key, "box key, e.g. 0:67108864|0:0:0|0:0:0|0:0:0")
        ->required();
    inspect->add_option("--e", ie, "exponent (1 or 2)")->check(CLI::IsMember({1, 2}));
    inspect->add_option("--eps", ieps, "confinement side");

    // audit-log
    auto* audit = app.add_subcommand("audit-log", "re-verify an elimination log");
    std::string apath;
    audit->add_option("--path", apath, "log file")->required();

    CLI11_PARSE(app, argc, argv);

    try {
        if (*verify) {
            tbp::SearchConfig cfg;
            cfg.e = e;
            cfg.epsPow = parseEpsPow(epsStr);
            cfg.mode = tbp::modeFromName(modeStr);
            cfg.workers = workers;
            cfg.logPath = out;
            cfg.checkpointPath = checkpoint;
            cfg.checkpointEvery = checkpointEvery;
            cfg.resumePath = resume;
            cfg.maxBoxes = maxBoxes;
            const auto report = tbp::run(cfg);
            std::cout << report.summary() << "\n";
            if (report.poisoned) return 3;
            return report.certified ? 0 : 1;
        }
        if (*hess) {
            const auto cert = tbp::certifyLocalMinimum(he);
            const auto text = tbp::certificateJson(cert);
            if (hout.empty()) {
                std::cout << text << "\n";
            } else {
                std::ofstream f(hout, std::ios::trunc);
                f << text << "\n";
                if (!f) throw tbp::Fault("cannot write " + hout);
            }
            std::cerr << (cert.valid ? "certificate valid" : "certificate INVALID") << "\n";
            return cert.valid ? 0 : 1;
        }
        if (*consts) {
            printConstants(ce);
            return 0;
        }
        if (*inspect) {
            const tbp::BoxEvaluator eval(ie, parseEpsPow(ieps), tbp::Mode::interval);
            std::cout << eval.inspect(tbp::DyadicBox::fromKey(key));
            return 0;
        }
        if (*audit) {
            std::vector<std::string> problems;
            const auto failures = tbp::auditLog(apath, problems);
            for (const auto& p : problems) std::cerr << p << "\n";
            std::cout << (failures == 0 ? "audit clean" : "audit FAILED") << " failures="
                      << failures << "\n";
            return failures == 0 ? 0 : 1;
        }
    } catch (const tbp::Fault& f) {
        std::cerr << "fault: " << f.what() << "\n";
        return 3;
    } catch (const std::exception& ex) {
        std::cerr << "error: " << ex.what() << "\n";
        return 2;
    }
    return 2;
}
