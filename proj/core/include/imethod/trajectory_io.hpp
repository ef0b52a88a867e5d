#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "imethod/spectral.hpp"

namespace imethod {

struct Snapshot {
    double t;
    SpectralField u;
};

using Trajectory = std::vector<Snapshot>;

/// Current trajectory format version.
inline constexpr int kTrajectoryFormatVersion = 1;

/// CSV snapshot stream. First line: `# imethod-trajectory v1 L=<L> M=<M>`, second line the
/// column names (t, re0, im0, re1, im1, ...), then one row per snapshot with the
/// stored half spectrum n = 0 .. M/2-1.
void write_trajectory_header(std::ostream& os, const FrequencyGrid& grid);
void write_snapshot(std::ostream& os, double t, const SpectralField& u);

Trajectory read_trajectory(std::istream& is);
Trajectory read_trajectory(const std::string& path);

}  // namespace imethod
