#include "drlqr/io.hpp"

#include <cstdint>
#include <cstdio>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "drlqr/errors.hpp"

namespace drlqr {

void write_grid_csv(const GridSamples& g, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw InputError("cannot open for writing: " + path);

    out << "k, omega";
    for (int r = 1; r <= g.rows; ++r) {
        for (int c = 1; c <= g.cols; ++c) {
            out << ", re(v_" << r << c << "), im(v_" << r << c << ")";
        }
    }
    out << "\n";

    char buf[32];
    auto fmt = [&buf](double v) {
        std::snprintf(buf, sizeof(buf), "%.17g", v);
        return std::string(buf);
    };
    for (int k = 0; k < g.grid_size; ++k) {
        out << k << ", " << fmt(g.omega(k));
        for (int r = 0; r < g.rows; ++r) {
            for (int c = 0; c < g.cols; ++c) {
                out << ", " << fmt(g[k](r, c).real()) << ", " << fmt(g[k](r, c).imag());
            }
        }
        out << "\n";
    }
}

GridSamples read_grid_csv(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw InputError("cannot open grid CSV: " + path);

    std::string header;
    if (!std::getline(in, header)) throw InputError("empty grid CSV: " + path);

    // Infer the shape from the trailing v_rc column names.
    int rows = 0, cols = 0;
    {
        std::stringstream hs(header);
        std::string       tok;
        while (std::getline(hs, tok, ',')) {
            const auto pos = tok.find("v_");
            if (pos == std::string::npos) continue;
            const std::string rc = tok.substr(pos + 2, tok.find(')', pos) - pos - 2);
            if (rc.size() < 2) throw InputError("grid CSV header: bad column name " + tok);
            rows = std::max(rows, rc[0] - '0');
            cols = std::max(cols, static_cast<int>(rc[rc.size() - 1] - '0'));
        }
    }
    if (rows <= 0 || cols <= 0) throw InputError("grid CSV header: no value columns in " + path);

    std::vector<Eigen::MatrixXcd> values;
    std::string                   line;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        std::stringstream   ls(line);
        std::string         tok;
        std::vector<double> nums;
        while (std::getline(ls, tok, ',')) nums.push_back(std::stod(tok));
        const size_t expected = 2 + 2 * static_cast<size_t>(rows) * static_cast<size_t>(cols);
        if (nums.size() != expected) {
            throw InputError("grid CSV row has " + std::to_string(nums.size()) +
                             " fields, expected " + std::to_string(expected));
        }
        Eigen::MatrixXcd M(rows, cols);
        size_t           idx = 2;
        for (int r = 0; r < rows; ++r) {
            for (int c = 0; c < cols; ++c) {
                M(r, c) = {nums[idx], nums[idx + 1]};
                idx += 2;
            }
        }
        values.push_back(std::move(M));
    }
    if (values.empty()) throw InputError("grid CSV has no data rows: " + path);

    GridSamples g(static_cast<int>(values.size()), rows, cols);
    g.values = std::move(values);
    return g;
}

void write_simrun_csv(const SimRun& run, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw InputError("cannot open for writing: " + path);
    out << "t, mean_cum_avg_cost, std_cum_avg_cost\n";
    char buf[32];
    auto fmt = [&buf](double v) {
        std::snprintf(buf, sizeof(buf), "%.17g", v);
        return std::string(buf);
    };
    for (int t = 0; t < run.horizon; ++t) {
        out << t << ", " << fmt(run.mean_cum_avg_cost[static_cast<size_t>(t)]) << ", "
            << fmt(run.std_cum_avg_cost[static_cast<size_t>(t)]) << "\n";
    }
}

namespace {

nlohmann::json matrix_to_json(const Eigen::MatrixXd& M) {
    nlohmann::json rows = nlohmann::json::array();
    for (long r = 0; r < M.rows(); ++r) {
        nlohmann::json row = nlohmann::json::array();
        for (long c = 0; c < M.cols(); ++c) row.push_back(M(r, c));
        rows.push_back(row);
    }
    return rows;
}

Eigen::MatrixXd matrix_from_json(const nlohmann::json& j) {
    const long rows = static_cast<long>(j.size());
    if (rows == 0) return Eigen::MatrixXd(0, 0);
    const long      cols = static_cast<long>(j[0].size());
    Eigen::MatrixXd M(rows, cols);
    for (long r = 0; r < rows; ++r) {
        for (long c = 0; c < cols; ++c) M(r, c) = j[static_cast<size_t>(r)][static_cast<size_t>(c)].get<double>();
    }
    return M;
}

}  // namespace

void write_controller_json(const ControllerSS& ctrl, double eps_star, const std::string& path) {
    nlohmann::json j;
    j["m"]        = ctrl.m;
    j["Ftil"]     = matrix_to_json(ctrl.Ftil);
    j["Gtil"]     = matrix_to_json(ctrl.Gtil);
    j["Htil"]     = matrix_to_json(ctrl.Htil);
    j["Jtil"]     = matrix_to_json(ctrl.Jtil);
    j["eps_star"] = eps_star;
    std::ofstream out(path);
    if (!out) throw InputError("cannot open for writing: " + path);
    out << j.dump(2) << "\n";
}

ControllerSS read_controller_json(const std::string& path, double* eps_star) {
    std::ifstream in(path);
    if (!in) throw InputError("cannot open controller JSON: " + path);
    nlohmann::json j;
    try {
        in >> j;
    } catch (const nlohmann::json::exception& e) {
        throw InputError("cannot parse controller JSON " + path + ": " + e.what());
    }
    for (const char* key : {"m", "Ftil", "Gtil", "Htil", "Jtil"}) {
        if (!j.contains(key)) {
            throw InputError("controller JSON " + path + ": missing field \"" + key + "\"");
        }
    }
    ControllerSS ctrl;
    ctrl.m    = j["m"].get<int>();
    ctrl.Ftil = matrix_from_json(j["Ftil"]);
    ctrl.Gtil = matrix_from_json(j["Gtil"]);
    ctrl.Htil = matrix_from_json(j["Htil"]);
    ctrl.Jtil = matrix_from_json(j["Jtil"]);
    if (eps_star != nullptr) {
        *eps_star = j.contains("eps_star") ? j["eps_star"].get<double>() : 0.0;
    }
    return ctrl;
}

std::string file_hash_hex(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw InputError("cannot open for hashing: " + path);
    std::uint64_t hash = 0xCBF29CE484222325ULL;
    char          ch;
    while (in.get(ch)) {
        hash ^= static_cast<unsigned char>(ch);
        hash *= 0x100000001B3ULL;
    }
    char buf[19];
    std::snprintf(buf, sizeof(buf), "%016llx", static_cast<unsigned long long>(hash));
    return buf;
}

}  // namespace drlqr
