#pragma once

#include <Eigen/Dense>
#include <filesystem>
#include <iosfwd>
#include <json.hpp>
#include <optional>
#include <string>
#include <vector>

#include "disi/denoiser.hpp"
#include "disi/toydata.hpp"

namespace disi {

/// 17 significant digits; parses back to the same double.
std::string format_double(double v);

/// Writes a header row and numeric rows, every value through format_double.
void write_csv(std::ostream& os, const std::vector<std::string>& header,
               const std::vector<std::vector<double>>& rows);
void write_csv(const std::filesystem::path& path, const std::vector<std::string>& header,
               const std::vector<std::vector<double>>& rows);

struct CsvTable {
    std::vector<std::string> header;
    std::vector<std::vector<double>> rows;
};

/// Reads a numeric CSV with one header row. Throws IoError.
CsvTable read_csv(const std::filesystem::path& path);

/// Points from a CSV whose columns are all coordinates (e.g. a degraded cloud).
Cloud read_cloud(const std::filesystem::path& path);
void write_cloud(const std::filesystem::path& path, const Cloud& cloud,
                 const std::string& prefix = "x");

/// Pair file `x0_1..x0_d,x1_1..x1_d` plus the sidecar `<path>.json`
/// holding {kind, params, seed, sigma_d, rho_hat}.
void write_dataset(const std::filesystem::path& path, const ToyDataset& ds);
ToyDataset read_dataset(const std::filesystem::path& path);
std::filesystem::path sidecar_path(const std::filesystem::path& path);

struct Checkpoint {
    int dims = 2;
    int emb_dim = 32;
    std::vector<int> widths;
    double sigma_d = 1.0;
    double rho = 0.0;
    Eigen::VectorXd weights;
    std::optional<Eigen::VectorXd> ema_weights;

    MlpDenoiser model(bool use_ema = true) const;
    static Checkpoint from(const MlpDenoiser& model,
                           std::optional<Eigen::VectorXd> ema = std::nullopt);
};

inline constexpr int kCheckpointVersion = 1;

nlohmann::json checkpoint_to_json(const Checkpoint& ckpt);
/// Throws IoError for an unknown version or inconsistent shapes.
Checkpoint checkpoint_from_json(const nlohmann::json& j);
void save_checkpoint(const std::filesystem::path& path, const Checkpoint& ckpt);
Checkpoint load_checkpoint(const std::filesystem::path& path);

nlohmann::json read_json(const std::filesystem::path& path);
void write_json(const std::filesystem::path& path, const nlohmann::json& j);

}  // namespace disi
