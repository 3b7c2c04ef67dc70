// Depth-first divide-and-conquer driver.
//
// A stack of dyadic boxes starts at the whole configuration space. Each box
// is examined with four tests in order - confinement, tetrahedral,
// redundancy, energy - and is either eliminated with a logged certificate
// line or replaced by the subdivision along the index with the largest
// error share. An empty stack certifies that every configuration outside
// the eps-neighborhood of the reference minimizer has been excluded.
//
// Modes: interval (certified throughout), float (round-to-nearest screen,
// no certificate), hybrid (float screen, every elimination re-confirmed in
// interval arithmetic; a float pass the intervals refuse is a mismatch and
// the test is treated as failed).

#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "tbp/eliminators.hpp"

namespace tbp {

enum class Mode { floating, interval, hybrid };

std::string modeName(Mode m);
Mode modeFromName(const std::string& s);

struct SearchConfig {
    int e = 2;
    int epsPow = 13;  // confinement side 2^-epsPow, in [2, 24]
    Mode mode = Mode::interval;
    int workers = 1;
    std::string logPath;         // written at the end, records sorted by key
    std::string checkpointPath;  // workers == 1 only
    std::uint64_t checkpointEvery = 0;
    std::string resumePath;
    std::uint64_t maxBoxes = 0;  // stop (unhalted) after this many examinations

    void validate() const;
    bool certifying() const { return mode != Mode::floating; }
};

enum class VerdictKind { confined, tetra, redundancy, energy, subdivide };

struct Verdict {
    VerdictKind kind = VerdictKind::subdivide;
    int subdivideIndex = -1;
    int property = 0;       // redundancy property
    std::string detail;     // certified quantities, formatted for the log
    int mismatches = 0;     // hybrid: float passes the intervals refused
};

// Pure per-box assessment; shared by the search, the box inspector, and the
// log auditor.
class BoxEvaluator {
  public:
    BoxEvaluator(int e, int epsPow, Mode mode);

    Verdict evaluate(const DyadicBox& box) const;

    // Re-verifies one logged elimination under interval arithmetic and
    // byte-compares the certified quantities.
    bool auditRecord(const DyadicBox& box, VerdictKind kind,
                     const std::string& detail, std::string* why) const;

    // Human-oriented dump of every test on one box.
    std::string inspect(const DyadicBox& box) const;

    const Interval& energyThreshold() const { return tbpRef_; }
    const Interval& tetraThreshold() const { return tetraBudget_; }

  private:
    Verdict evaluateInterval(const DyadicBox& box) const;
    Verdict evaluateFloat(const DyadicBox& box) const;
    Verdict evaluateHybrid(const DyadicBox& box) const;

    std::string tetraDetail(const TetraResult<Interval>& t) const;
    std::string redundancyDetail(const RedundancyResult& r,
                                 const PairTable<Interval>& pairs,
                                 const DyadicBox& box) const;
    std::string energyDetail(const EnergyBound<Interval>& b) const;

    int e_;
    int epsPow_;
    Mode mode_;
    Interval tbpRef_;       // M_e
    Interval tetraBudget_;  // M_e - T_e
};

struct SearchReport {
    bool halted = false;
    bool poisoned = false;
    std::string fault;
    std::uint64_t processed = 0;
    std::uint64_t confined = 0;
    std::uint64_t tetra = 0;
    std::uint64_t redundancy[3] = {0, 0, 0};
    std::uint64_t energy = 0;
    std::uint64_t subdivisions = 0;
    std::uint64_t mismatches = 0;
    int maxDepth = 0;
    double wallSeconds = 0.0;
    std::uint64_t logDigest = 0;
    std::vector<std::string> records;  // sorted "key verdict ..." lines

    bool certified = false;  // halted, unpoisoned, non-float mode
    std::uint64_t eliminated() const {
        return confined + tetra + redundancy[0] + redundancy[1] + redundancy[2] + energy;
    }
    std::string summary() const;
};

SearchReport run(const SearchConfig& cfg);

// Re-verify every record of a log file; returns the number of failures and
// fills `problems` (capped) with diagnostics.
std::uint64_t auditLog(const std::string& path, std::vector<std::string>& problems);

}  // namespace tbp
