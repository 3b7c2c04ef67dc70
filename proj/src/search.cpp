#include "tbp/search.hpp"

#include <algorithm>
#include <chrono>
#include <condition_variable>
#include <fstream>
#include <mutex>
#include <sstream>
#include <thread>

#include "tbp/hexfloat.hpp"

namespace tbp {

std::string modeName(Mode m) {
    switch (m) {
        case Mode::floating: return "float";
        case Mode::interval: return "interval";
        case Mode::hybrid: return "hybrid";
    }
    std::abort();
}

Mode modeFromName(const std::string& s) {
    if (s == "float") return Mode::floating;
    if (s == "interval") return Mode::interval;
    if (s == "hybrid") return Mode::hybrid;
    throw Fault("unknown mode: " + s);
}

void SearchConfig::validate() const {
    requireExponent(e);
    if (epsPow < 2 || epsPow > 24) throw Fault("eps must be 2^-k with k in [2,24]");
    if (workers < 1) throw Fault("workers must be positive");
    if (!checkpointPath.empty() && workers != 1)
        throw Fault("checkpointing requires a single worker");
}

// ---------------------------------------------------------------------------
// BoxEvaluator

BoxEvaluator::BoxEvaluator(int e, int epsPow, Mode mode)
    : e_(e), epsPow_(epsPow), mode_(mode), tbpRef_(tbpEnergy(e)),
      tetraBudget_(tbpEnergy(e) - tetraEnergy(e)) {}

std::string BoxEvaluator::tetraDetail(const TetraResult<Interval>& t) const {
    return "tetra i=" + std::to_string(t.witness) + " sum=" + hexInterval(t.sum) +
           " threshold=" + hexInterval(tetraBudget_);
}

std::string BoxEvaluator::redundancyDetail(const RedundancyResult& r,
                                           const PairTable<Interval>& pairs,
                                           const DyadicBox& box) const {
    std::string s = "redundancy p=" + std::to_string(r.property);
    if (r.property == 1) {
        if (r.detail < 0) {
            s += " x0hi=" + hexDouble(box.q0.xHi());
        } else {
            const int i = r.detail / 10, j = r.detail % 10;
            s += " pair=" + std::to_string(i) + "," + std::to_string(j) +
                 " psimax=" + hexInterval(pairs.pair(i, j).psiMax) +
                 " psimin=" + hexInterval(pairs.pair(0, 4).psiMin);
        }
    } else if (r.property == 2) {
        s += " case=" + std::to_string(r.detail);
    } else {
        s += " x2hi=" + hexDouble(box.squares[1].xHi()) +
             " cut=" + hexInterval(oneMinusSqrt2());
    }
    return s;
}

std::string BoxEvaluator::energyDetail(const EnergyBound<Interval>& b) const {
    return "energy bound=" + hexDouble(b.bound.lo()) + " vmin=" + hexInterval(b.vertexMin) +
           " err=" + hexDouble(b.budget.total.value.hi()) +
           " threshold=" + hexDouble(tbpRef_.hi());
}

// Certified pass, in the stated order.
Verdict BoxEvaluator::evaluateInterval(const DyadicBox& box) const {
    Verdict v;
    v.kind = VerdictKind::subdivide;

    if (isConfined(box, epsPow_)) {
        v.kind = VerdictKind::confined;
        v.detail = "confined";
        return v;
    }

    const auto pairs = PairTable<Interval>::build(box);

    const auto tetra = tetraEliminate<Interval>(box, pairs, tetraBudget_, e_);
    if (tetra.eliminated) {
        v.kind = VerdictKind::tetra;
        v.detail = tetraDetail(tetra);
        return v;
    }

    if (const auto red = redundancyEliminate<Interval>(box, pairs)) {
        v.kind = VerdictKind::redundancy;
        v.property = red->property;
        v.detail = redundancyDetail(*red, pairs, box);
        return v;
    }

    const auto eb = energyLowerBound<Interval>(box, pairs, e_);
    if (eb.usable && eb.bound.lo() > tbpRef_.hi()) {
        v.kind = VerdictKind::energy;
        v.detail = energyDetail(eb);
        return v;
    }

    v.kind = VerdictKind::subdivide;
    v.subdivideIndex = subdivisionIndex(eb.budget, box);
    return v;
}

Verdict BoxEvaluator::evaluateFloat(const DyadicBox& box) const {
    Verdict v;

    if (isConfined(box, epsPow_, kFloatComparisonSlack)) {
        v.kind = VerdictKind::confined;
        v.detail = "confined";
        return v;
    }

    const auto pairs = PairTable<double>::build(box);

    const auto tetra =
        tetraEliminate<double>(box, pairs, tetraBudget_.hi(), e_);
    if (tetra.eliminated) {
        v.kind = VerdictKind::tetra;
        v.detail = "tetra i=" + std::to_string(tetra.witness);
        return v;
    }

    if (const auto red = redundancyEliminate<double>(box, pairs, kFloatComparisonSlack)) {
        v.kind = VerdictKind::redundancy;
        v.property = red->property;
        v.detail = "redundancy p=" + std::to_string(red->property);
        return v;
    }

    const auto eb = energyLowerBound<double>(box, pairs, e_);
    if (eb.usable && eb.bound > tbpRef_.hi() + kFloatEnergyFudge) {
        v.kind = VerdictKind::energy;
        v.detail = "energy bound=" + hexDouble(eb.bound);
        return v;
    }

    v.kind = VerdictKind::subdivide;
    v.subdivideIndex = subdivisionIndex(eb.budget, box);
    return v;
}

// Float screen first; each float pass is re-run in interval arithmetic. A
// confirmed pass eliminates, a refused pass is a mismatch and falls through
// to the next test. Subdivision uses the interval error budget so the tree
// matches the pure interval run.
Verdict BoxEvaluator::evaluateHybrid(const DyadicBox& box) const {
    Verdict v;
    int mismatches = 0;

    if (isConfined(box, epsPow_, kFloatComparisonSlack)) {
        if (isConfined(box, epsPow_)) {
            v.kind = VerdictKind::confined;
            v.detail = "confined";
            return v;
        }
        ++mismatches;
    }

    const auto fpairs = PairTable<double>::build(box);
    const auto pairs = PairTable<Interval>::build(box);

    if (tetraEliminate<double>(box, fpairs, tetraBudget_.hi(), e_).eliminated) {
        const auto tetra = tetraEliminate<Interval>(box, pairs, tetraBudget_, e_);
        if (tetra.eliminated) {
            v.kind = VerdictKind::tetra;
            v.detail = tetraDetail(tetra);
            v.mismatches = mismatches;
            return v;
        }
        ++mismatches;
    }

    if (redundancyEliminate<double>(box, fpairs, kFloatComparisonSlack)) {
        if (const auto red = redundancyEliminate<Interval>(box, pairs)) {
            v.kind = VerdictKind::redundancy;
            v.property = red->property;
            v.detail = redundancyDetail(*red, pairs, box);
            v.mismatches = mismatches;
            return v;
        }
        ++mismatches;
    }

    const auto feb = energyLowerBound<double>(box, fpairs, e_);
    const auto eb = energyLowerBound<Interval>(box, pairs, e_);
    if (feb.usable && feb.bound > tbpRef_.hi() + kFloatEnergyFudge) {
        if (eb.usable && eb.bound.lo() > tbpRef_.hi()) {
            v.kind = VerdictKind::energy;
            v.detail = energyDetail(eb);
            v.mismatches = mismatches;
            return v;
        }
        ++mismatches;
    }

    v.kind = VerdictKind::subdivide;
    v.subdivideIndex = subdivisionIndex(eb.budget, box);
    v.mismatches = mismatches;
    return v;
}

Verdict BoxEvaluator::evaluate(const DyadicBox& box) const {
    switch (mode_) {
        case Mode::interval: return evaluateInterval(box);
        case Mode::floating: return evaluateFloat(box);
        case Mode::hybrid: return evaluateHybrid(box);
    }
    std::abort();
}

bool BoxEvaluator::auditRecord(const DyadicBox& box, VerdictKind kind,
                               const std::string& detail, std::string* why) const {
    const auto fail = [&](const std::string& m) {
        if (why) *why = m;
        return false;
    };
    switch (kind) {
        case VerdictKind::confined:
            if (!isConfined(box, epsPow_)) return fail("confinement does not re-verify");
            return true;
        case VerdictKind::tetra: {
            const auto pairs = PairTable<Interval>::build(box);
            const auto t = tetraEliminate<Interval>(box, pairs, tetraBudget_, e_);
            if (!t.eliminated) return fail("tetra does not re-verify");
            if (tetraDetail(t) != detail) return fail("tetra quantities differ");
            return true;
        }
        case VerdictKind::redundancy: {
            const auto pairs = PairTable<Interval>::build(box);
            const auto r = redundancyEliminate<Interval>(box, pairs);
            if (!r) return fail("redundancy does not re-verify");
            if (redundancyDetail(*r, pairs, box) != detail)
                return fail("redundancy quantities differ");
            return true;
        }
        case VerdictKind::energy: {
            const auto pairs = PairTable<Interval>::build(box);
            const auto eb = energyLowerBound<Interval>(box, pairs, e_);
            if (!(eb.usable && eb.bound.lo() > tbpRef_.hi()))
                return fail("energy bound does not re-verify");
            if (energyDetail(eb) != detail) return fail("energy quantities differ");
            return true;
        }
        case VerdictKind::subdivide: break;
    }
    return fail("unauditable verdict");
}

std::string BoxEvaluator::inspect(const DyadicBox& box) const {
    std::ostringstream out;
    out << "box " << box.key() << "\n";
    for (int i = 0; i < 4; ++i) {
        const Patch q = box.patch(i);
        const auto qn = quantities(q);
        out << "  factor " << i << (q.kind == PatchKind::segment ? " segment" : " square")
            << " depth=" << q.depth << " x=[" << hexDouble(q.xLo()) << ","
            << hexDouble(q.xHi()) << "]";
        if (q.kind == PatchKind::square)
            out << " y=[" << hexDouble(q.yLo()) << "," << hexDouble(q.yHi()) << "]"
                << (q.normal() ? " normal" : " crossing");
        out << " delta=" << hexInterval(qn.delta) << "\n";
    }

    out << "  confined(eps=2^-" << epsPow_ << "): " << (isConfined(box, epsPow_) ? "yes" : "no")
        << "\n";

    const auto pairs = PairTable<Interval>::build(box);
    for (int i = 0; i < 5; ++i)
        for (int j = i + 1; j < 5; ++j)
            out << "  pair " << i << "," << j
                << " psimin=" << hexInterval(pairs.pair(i, j).psiMin)
                << " psimax=" << hexInterval(pairs.pair(i, j).psiMax) << "\n";

    const auto tetra = tetraEliminate<Interval>(box, pairs, tetraBudget_, e_);
    out << "  tetra threshold=" << hexInterval(tetraBudget_)
        << (tetra.eliminated ? " eliminated " + tetraDetail(tetra) : " not eliminated") << "\n";

    if (const auto red = redundancyEliminate<Interval>(box, pairs))
        out << "  " << redundancyDetail(*red, pairs, box) << "\n";
    else
        out << "  redundancy: not eliminated\n";

    const auto eb = energyLowerBound<Interval>(box, pairs, e_);
    if (eb.usable) {
        out << "  " << energyDetail(eb)
            << (eb.bound.lo() > tbpRef_.hi() ? " eliminated" : " not eliminated") << "\n";
    } else {
        out << "  energy: touching patches, bound unavailable\n";
    }
    for (int i = 0; i < 4; ++i) {
        const auto& t = eb.budget.perIndex[static_cast<std::size_t>(i)];
        out << "  err(" << i << ")="
            << (t.infinite ? std::string("inf") : hexInterval(t.value)) << "\n";
    }

    const auto v = evaluate(box);
    out << "  verdict: ";
    switch (v.kind) {
        case VerdictKind::confined: out << "confined"; break;
        case VerdictKind::tetra: out << "tetra"; break;
        case VerdictKind::redundancy: out << "redundancy p=" << v.property; break;
        case VerdictKind::energy: out << "energy"; break;
        case VerdictKind::subdivide: out << "subdivide k=" << v.subdivideIndex; break;
    }
    out << "\n";
    return out.str();
}

// ---------------------------------------------------------------------------
// Driver

namespace {

constexpr std::uint64_t kFnvOffset = 1469598103934665603ull;
constexpr std::uint64_t kFnvPrime = 1099511628211ull;

std::uint64_t fnv1a(std::uint64_t h, const std::string& s) {
    for (const char c : s) {
        h ^= static_cast<unsigned char>(c);
        h *= kFnvPrime;
    }
    h ^= static_cast<unsigned char>('\n');
    h *= kFnvPrime;
    return h;
}

struct SharedState {
    std::mutex mu;
    std::condition_variable cv;
    std::vector<DyadicBox> stack;
    std::uint64_t inFlight = 0;
    bool stop = false;
    SearchReport report;
    std::vector<std::string> records;
    const SearchConfig* cfg = nullptr;
};

void writeCheckpoint(const SearchConfig& cfg, const SharedState& st) {
    std::ofstream out(cfg.checkpointPath, std::ios::trunc);
    if (!out) throw Fault("cannot open checkpoint file " + cfg.checkpointPath);
    const auto& r = st.report;
    out << "tbp-checkpoint v1\n";
    out << "e=" << cfg.e << " epsPow=" << cfg.epsPow << " mode=" << modeName(cfg.mode) << "\n";
    out << "processed=" << r.processed << " confined=" << r.confined << " tetra=" << r.tetra
        << " red1=" << r.redundancy[0] << " red2=" << r.redundancy[1]
        << " red3=" << r.redundancy[2] << " energy=" << r.energy
        << " subdivisions=" << r.subdivisions << " mismatches=" << r.mismatches
        << " maxDepth=" << r.maxDepth << "\n";
    out << "stack=" << st.stack.size() << "\n";
    for (const auto& b : st.stack) out << "S " << b.key() << "\n";
    out << "records=" << st.records.size() << "\n";
    for (const auto& rec : st.records) out << "R " << rec << "\n";
    out << "end\n";
    if (!out) throw Fault("checkpoint write failed");
}

void loadCheckpoint(const SearchConfig& cfg, SharedState& st) {
    std::ifstream in(cfg.resumePath);
    if (!in) throw Fault("cannot open checkpoint file " + cfg.resumePath);
    std::string line;
    if (!std::getline(in, line) || line != "tbp-checkpoint v1")
        throw Fault("checkpoint version mismatch");
    if (!std::getline(in, line)) throw Fault("truncated checkpoint");
    {
        std::ostringstream want;
        want << "e=" << cfg.e << " epsPow=" << cfg.epsPow << " mode=" << modeName(cfg.mode);
        if (line != want.str())
            throw Fault("checkpoint configuration mismatch: " + line);
    }
    auto& r = st.report;
    if (!std::getline(in, line)) throw Fault("truncated checkpoint");
    if (std::sscanf(line.c_str(),
                    "processed=%llu confined=%llu tetra=%llu red1=%llu red2=%llu "
                    "red3=%llu energy=%llu subdivisions=%llu mismatches=%llu maxDepth=%d",
                    reinterpret_cast<unsigned long long*>(&r.processed),
                    reinterpret_cast<unsigned long long*>(&r.confined),
                    reinterpret_cast<unsigned long long*>(&r.tetra),
                    reinterpret_cast<unsigned long long*>(&r.redundancy[0]),
                    reinterpret_cast<unsigned long long*>(&r.redundancy[1]),
                    reinterpret_cast<unsigned long long*>(&r.redundancy[2]),
                    reinterpret_cast<unsigned long long*>(&r.energy),
                    reinterpret_cast<unsigned long long*>(&r.subdivisions),
                    reinterpret_cast<unsigned long long*>(&r.mismatches),
                    &r.maxDepth) != 10)
        throw Fault("malformed checkpoint counters");
    std::size_t stackCount = 0, recordCount = 0;
    if (!std::getline(in, line) || std::sscanf(line.c_str(), "stack=%zu", &stackCount) != 1)
        throw Fault("malformed checkpoint stack header");
    for (std::size_t i = 0; i < stackCount; ++i) {
        if (!std::getline(in, line) || line.size() < 2 || line[0] != 'S')
            throw Fault("malformed checkpoint stack entry");
        st.stack.push_back(DyadicBox::fromKey(line.substr(2)));
    }
    if (!std::getline(in, line) || std::sscanf(line.c_str(), "records=%zu", &recordCount) != 1)
        throw Fault("malformed checkpoint record header");
    for (std::size_t i = 0; i < recordCount; ++i) {
        if (!std::getline(in, line) || line.size() < 2 || line[0] != 'R')
            throw Fault("malformed checkpoint record entry");
        st.records.push_back(line.substr(2));
    }
    if (!std::getline(in, line) || line != "end") throw Fault("truncated checkpoint");
}

void workerLoop(SharedState& st, const BoxEvaluator& eval) {
    const SearchConfig& cfg = *st.cfg;
    std::unique_lock lock(st.mu);
    while (true) {
        st.cv.wait(lock, [&] {
            return st.stop || !st.stack.empty() || st.inFlight == 0;
        });
        if (st.stop) return;
        if (st.stack.empty()) {
            if (st.inFlight == 0) return;
            continue;
        }
        if (cfg.maxBoxes != 0 && st.report.processed >= cfg.maxBoxes) {
            st.stop = true;
            st.cv.notify_all();
            return;
        }

        const DyadicBox box = st.stack.back();
        st.stack.pop_back();
        ++st.inFlight;
        ++st.report.processed;
        const int depth = box.maxFactorDepth();
        if (depth > st.report.maxDepth) st.report.maxDepth = depth;
        lock.unlock();

        Verdict v;
        bool failed = false;
        std::string failure;
        try {
            v = eval.evaluate(box);
        } catch (const Fault& f) {
            failed = true;
            failure = f.what();
        }

        std::vector<DyadicBox> children;
        if (!failed && v.kind == VerdictKind::subdivide) {
            try {
                children = box.subdivide(v.subdivideIndex);
            } catch (const Fault& f) {
                failed = true;
                failure = f.what();
            }
        }

        lock.lock();
        if (failed) {
            st.report.poisoned = true;
            st.report.fault = failure + " at box " + box.key();
            st.stop = true;
            --st.inFlight;
            st.cv.notify_all();
            return;
        }
        st.report.mismatches += static_cast<std::uint64_t>(v.mismatches);
        switch (v.kind) {
            case VerdictKind::confined: ++st.report.confined; break;
            case VerdictKind::tetra: ++st.report.tetra; break;
            case VerdictKind::redundancy:
                ++st.report.redundancy[static_cast<std::size_t>(v.property - 1)];
                break;
            case VerdictKind::energy: ++st.report.energy; break;
            case VerdictKind::subdivide: ++st.report.subdivisions; break;
        }
        if (v.kind == VerdictKind::subdivide) {
            for (auto& c : children) st.stack.push_back(c);
        } else {
            st.records.push_back(box.key() + " " + v.detail);
        }
        if (!cfg.checkpointPath.empty() && cfg.checkpointEvery != 0 &&
            st.report.processed % cfg.checkpointEvery == 0) {
            writeCheckpoint(cfg, st);
        }
        --st.inFlight;
        st.cv.notify_all();
    }
}

}  // namespace

std::string SearchReport::summary() const {
    std::ostringstream out;
    out << (halted ? "halted" : (poisoned ? "poisoned" : "stopped")) << " processed=" << processed
        << " confined=" << confined << " tetra=" << tetra << " red1=" << redundancy[0]
        << " red2=" << redundancy[1] << " red3=" << redundancy[2] << " energy=" << energy
        << " subdivisions=" << subdivisions << " mismatches=" << mismatches
        << " maxDepth=" << maxDepth << " wall=" << wallSeconds << "s";
    if (poisoned) out << " fault=" << fault;
    if (certified) out << " certificate=confinement";
    return out.str();
}

SearchReport run(const SearchConfig& cfg) {
    cfg.validate();
    const auto start = std::chrono::steady_clock::now();

    SharedState st;
    st.cfg = &cfg;
    if (!cfg.resumePath.empty()) {
        loadCheckpoint(cfg, st);
    } else {
        st.stack.push_back(DyadicBox::root());
    }

    const BoxEvaluator eval(cfg.e, cfg.epsPow, cfg.mode);
    {
        std::vector<std::thread> pool;
        pool.reserve(static_cast<std::size_t>(cfg.workers));
        for (int i = 0; i < cfg.workers; ++i)
            pool.emplace_back(workerLoop, std::ref(st), std::cref(eval));
        for (auto& t : pool) t.join();
    }

    SearchReport report = std::move(st.report);
    report.halted = !report.poisoned && st.stack.empty() && st.inFlight == 0 && !st.stop;
    report.certified = report.halted && cfg.certifying();

    std::sort(st.records.begin(), st.records.end());
    std::uint64_t digest = kFnvOffset;
    for (const auto& r : st.records) digest = fnv1a(digest, r);
    report.logDigest = digest;
    report.records = std::move(st.records);

    if (!cfg.checkpointPath.empty() && !report.halted && !report.poisoned) {
        SharedState snapshot;
        snapshot.report = report;
        snapshot.stack = std::move(st.stack);
        snapshot.records = report.records;
        writeCheckpoint(cfg, snapshot);
    }

    if (!cfg.logPath.empty()) {
        std::ofstream out(cfg.logPath, std::ios::trunc);
        if (!out) throw Fault("cannot open log file " + cfg.logPath);
        out << "# tbp-log v1 e=" << cfg.e << " eps=2^-" << cfg.epsPow
            << " mode=" << modeName(cfg.mode) << "\n";
        for (const auto& r : report.records) out << r << "\n";
        out << "# digest=" << report.logDigest << " records=" << report.records.size()
            << (report.halted ? " halted" : " partial") << "\n";
        if (!out) throw Fault("log write failed");
    }

    report.wallSeconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    return report;
}

std::uint64_t auditLog(const std::string& path, std::vector<std::string>& problems) {
    std::ifstream in(path);
    if (!in) throw Fault("cannot open log file " + path);
    std::string header;
    if (!std::getline(in, header)) throw Fault("empty log file");
    int e = 0, epsPow = 0;
    char modeBuf[16] = {};
    if (std::sscanf(header.c_str(), "# tbp-log v1 e=%d eps=2^-%d mode=%15s", &e, &epsPow,
                    modeBuf) != 3)
        throw Fault("malformed log header: " + header);

    const BoxEvaluator eval(e, epsPow, Mode::interval);
    std::uint64_t failures = 0;
    std::string line;
    while (std::getline(in, line)) {
        if (line.empty() || line[0] == '#') continue;
        const auto keyEnd = line.find(' ');
        if (keyEnd == std::string::npos) {
            ++failures;
            problems.push_back("malformed record: " + line);
            continue;
        }
        const std::string key = line.substr(0, keyEnd);
        const std::string detail = line.substr(keyEnd + 1);
        const auto kindEnd = detail.find(' ');
        const std::string token =
            kindEnd == std::string::npos ? detail : detail.substr(0, kindEnd);

        VerdictKind kind;
        if (token == "confined") kind = VerdictKind::confined;
        else if (token == "tetra") kind = VerdictKind::tetra;
        else if (token == "redundancy") kind = VerdictKind::redundancy;
        else if (token == "energy") kind = VerdictKind::energy;
        else {
            ++failures;
            problems.push_back("unknown verdict: " + line);
            continue;
        }

        std::string why;
        try {
            const DyadicBox box = DyadicBox::fromKey(key);
            if (!eval.auditRecord(box, kind, detail, &why)) {
                ++failures;
                if (problems.size() < 50) problems.push_back(key + ": " + why);
            }
        } catch (const Fault& f) {
            ++failures;
            if (problems.size() < 50) problems.push_back(key + ": " + f.what());
        }
    }
    return failures;
}

}  // namespace tbp
