#pragma once

#include <cstdint>
#include <string>

#include "drlqr/grid.hpp"
#include "drlqr/rational.hpp"
#include "drlqr/simulate.hpp"

namespace drlqr {

/// CSV with header "k, omega, re(v_11), im(v_11), ..." and one row per grid
/// sample, entries in row-major order.
void        write_grid_csv(const GridSamples& g, const std::string& path);
GridSamples read_grid_csv(const std::string& path);

/// "t, mean_cum_avg_cost, std_cum_avg_cost" per step.
void write_simrun_csv(const SimRun& run, const std::string& path);

/// Controller export {"m", "Ftil", "Gtil", "Htil", "Jtil", "eps_star"}.
void         write_controller_json(const ControllerSS& ctrl, double eps_star,
                                   const std::string& path);
ControllerSS read_controller_json(const std::string& path, double* eps_star = nullptr);

/// FNV-1a of a file's bytes, as a hex string (manifest input hashes).
std::string file_hash_hex(const std::string& path);

}  // namespace drlqr
