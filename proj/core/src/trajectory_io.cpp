#include "imethod/trajectory_io.hpp"

#include <fstream>
#include <iomanip>
#include <sstream>

#include "imethod/error.hpp"

namespace imethod {

void write_trajectory_header(std::ostream& os, const FrequencyGrid& grid) {
    os << "# imethod-trajectory v" << kTrajectoryFormatVersion << " L=" << std::setprecision(17)
       << grid.length() << " M=" << grid.modes() << "\n";
    os << "t";
    for (int n = 0; n <= grid.max_index(); ++n) os << ",re" << n << ",im" << n;
    os << "\n";
}

void write_snapshot(std::ostream& os, double t, const SpectralField& u) {
    os << std::setprecision(17) << t;
    for (const cplx& z : u.half()) os << ',' << z.real() << ',' << z.imag();
    os << "\n";
}

Trajectory read_trajectory(std::istream& is) {
    std::string line;
    if (!std::getline(is, line)) throw Error("read_trajectory: empty stream");
    std::istringstream head(line);
    std::string hash, tag, version, lfield, mfield;
    head >> hash >> tag >> version >> lfield >> mfield;
    if (hash != "#" || tag != "imethod-trajectory") throw Error("read_trajectory: missing format header");
    if (version != "v" + std::to_string(kTrajectoryFormatVersion)) {
        throw Error("read_trajectory: unsupported format version " + version);
    }
    if (lfield.rfind("L=", 0) != 0 || mfield.rfind("M=", 0) != 0) {
        throw Error("read_trajectory: malformed header '" + line + "'");
    }
    const FrequencyGrid grid(std::stod(lfield.substr(2)), std::stoi(mfield.substr(2)));
    std::getline(is, line);  // column names

    Trajectory out;
    const auto kept = static_cast<std::size_t>(grid.max_index() + 1);
    while (std::getline(is, line)) {
        if (line.empty()) continue;
        std::istringstream row(line);
        std::string cell;
        std::vector<double> vals;
        while (std::getline(row, cell, ',')) vals.push_back(std::stod(cell));
        if (vals.size() != 1 + 2 * kept) throw Error("read_trajectory: row has wrong width");
        std::vector<cplx> half(kept);
        for (std::size_t n = 0; n < kept; ++n) half[n] = {vals[1 + 2 * n], vals[2 + 2 * n]};
        out.push_back({vals[0], SpectralField(grid, std::move(half))});
    }
    return out;
}

Trajectory read_trajectory(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw Error("read_trajectory: cannot open " + path);
    return read_trajectory(in);
}

}  // namespace imethod
