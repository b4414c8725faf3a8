#include "disi/io.hpp"

#include <charconv>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "disi/errors.hpp"

namespace disi {

namespace fs = std::filesystem;
using nlohmann::json;

std::string format_double(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

void write_csv(std::ostream& os, const std::vector<std::string>& header,
               const std::vector<std::vector<double>>& rows) {
    for (std::size_t i = 0; i < header.size(); ++i) os << (i ? "," : "") << header[i];
    os << '\n';
    for (const auto& row : rows) {
        for (std::size_t i = 0; i < row.size(); ++i) os << (i ? "," : "") << format_double(row[i]);
        os << '\n';
    }
}

void write_csv(const fs::path& path, const std::vector<std::string>& header,
               const std::vector<std::vector<double>>& rows) {
    std::ofstream os(path);
    if (!os) throw IoError("cannot open " + path.string() + " for writing");
    write_csv(os, header, rows);
    if (!os) throw IoError("write failed: " + path.string());
}

namespace {

std::vector<std::string> split(const std::string& line) {
    std::vector<std::string> out;
    std::string cell;
    std::istringstream is(line);
    while (std::getline(is, cell, ',')) out.push_back(cell);
    if (!line.empty() && line.back() == ',') out.emplace_back();
    return out;
}

double parse_double(const std::string& s, const fs::path& path, std::size_t line) {
    double v = 0.0;
    const char* first = s.data();
    const char* last = s.data() + s.size();
    while (first < last && *first == ' ') ++first;
    while (last > first && (last[-1] == ' ' || last[-1] == '\r')) --last;
    const auto [ptr, ec] = std::from_chars(first, last, v);
    if (ec != std::errc() || ptr != last) {
        throw IoError(path.string() + ":" + std::to_string(line) + ": bad number '" + s + "'");
    }
    return v;
}

std::vector<double> flat_layer_rows(const json& rows, int out, int in) {
    if (!rows.is_array() || static_cast<int>(rows.size()) != out) {
        throw IoError("checkpoint: weight matrix has the wrong row count");
    }
    std::vector<double> v;
    for (const json& row : rows) {
        if (!row.is_array() || static_cast<int>(row.size()) != in) {
            throw IoError("checkpoint: weight matrix has the wrong column count");
        }
        for (const json& x : row) v.push_back(x.get<double>());
    }
    return v;
}

json layers_to_json(const std::vector<int>& widths, const Eigen::VectorXd& p) {
    json layers = json::array();
    std::size_t off = 0;
    for (std::size_t l = 0; l + 1 < widths.size(); ++l) {
        const int in = widths[l];
        const int out = widths[l + 1];
        json w = json::array();
        for (int i = 0; i < out; ++i) {
            json row = json::array();
            for (int j = 0; j < in; ++j) row.push_back(p[static_cast<Eigen::Index>(off++)]);
            w.push_back(std::move(row));
        }
        json b = json::array();
        for (int i = 0; i < out; ++i) b.push_back(p[static_cast<Eigen::Index>(off++)]);
        layers.push_back({{"W", std::move(w)}, {"b", std::move(b)}});
    }
    return layers;
}

Eigen::VectorXd layers_from_json(const std::vector<int>& widths, const json& layers) {
    if (!layers.is_array() || layers.size() + 1 != widths.size()) {
        throw IoError("checkpoint: layer count does not match widths");
    }
    std::vector<double> flat;
    for (std::size_t l = 0; l < layers.size(); ++l) {
        const int in = widths[l];
        const int out = widths[l + 1];
        const json& layer = layers[l];
        if (!layer.contains("W") || !layer.contains("b")) throw IoError("checkpoint: layer lacks W or b");
        const std::vector<double> w = flat_layer_rows(layer["W"], out, in);
        flat.insert(flat.end(), w.begin(), w.end());
        const json& b = layer["b"];
        if (!b.is_array() || static_cast<int>(b.size()) != out) {
            throw IoError("checkpoint: bias has the wrong length");
        }
        for (const json& x : b) flat.push_back(x.get<double>());
    }
    return Eigen::Map<const Eigen::VectorXd>(flat.data(), static_cast<Eigen::Index>(flat.size()));
}

}  // namespace

CsvTable read_csv(const fs::path& path) {
    std::ifstream is(path);
    if (!is) throw IoError("cannot open " + path.string());
    CsvTable t;
    std::string line;
    if (!std::getline(is, line)) throw IoError(path.string() + ": missing header");
    if (!line.empty() && line.back() == '\r') line.pop_back();
    t.header = split(line);
    std::size_t n = 1;
    while (std::getline(is, line)) {
        ++n;
        if (line.empty() || line == "\r") continue;
        const auto cells = split(line);
        if (cells.size() != t.header.size()) {
            throw IoError(path.string() + ":" + std::to_string(n) + ": expected " +
                          std::to_string(t.header.size()) + " columns");
        }
        std::vector<double> row;
        row.reserve(cells.size());
        for (const auto& c : cells) row.push_back(parse_double(c, path, n));
        t.rows.push_back(std::move(row));
    }
    return t;
}

Cloud read_cloud(const fs::path& path) {
    CsvTable t = read_csv(path);
    return std::move(t.rows);
}

void write_cloud(const fs::path& path, const Cloud& cloud, const std::string& prefix) {
    const std::size_t dim = cloud.empty() ? 0 : cloud.front().size();
    std::vector<std::string> header;
    for (std::size_t i = 0; i < dim; ++i) header.push_back(prefix + "_" + std::to_string(i + 1));
    write_csv(path, header, cloud);
}

fs::path sidecar_path(const fs::path& path) {
    fs::path p = path;
    p += ".json";
    return p;
}

void write_dataset(const fs::path& path, const ToyDataset& ds) {
    const std::size_t dim = ds.dim();
    std::vector<std::string> header;
    for (std::size_t i = 0; i < dim; ++i) header.push_back("x0_" + std::to_string(i + 1));
    for (std::size_t i = 0; i < dim; ++i) header.push_back("x1_" + std::to_string(i + 1));
    std::vector<std::vector<double>> rows;
    rows.reserve(ds.pairs.size());
    for (const PairSample& p : ds.pairs) {
        std::vector<double> row(p.x0);
        row.insert(row.end(), p.x1.begin(), p.x1.end());
        rows.push_back(std::move(row));
    }
    write_csv(path, header, rows);
    json meta = ds.provenance.is_object() ? ds.provenance : json::object();
    meta["sigma_d"] = ds.sigma_d;
    meta["rho_hat"] = ds.rho_hat;
    write_json(sidecar_path(path), meta);
}

ToyDataset read_dataset(const fs::path& path) {
    const CsvTable t = read_csv(path);
    if (t.header.empty() || t.header.size() % 2 != 0) {
        throw IoError(path.string() + ": dataset needs x0_* and x1_* columns");
    }
    const std::size_t dim = t.header.size() / 2;
    for (std::size_t i = 0; i < dim; ++i) {
        if (t.header[i] != "x0_" + std::to_string(i + 1) ||
            t.header[dim + i] != "x1_" + std::to_string(i + 1)) {
            throw IoError(path.string() + ": unexpected dataset header");
        }
    }
    ToyDataset ds;
    for (const auto& row : t.rows) {
        ds.pairs.push_back({Vec(row.begin(), row.begin() + static_cast<long>(dim)),
                            Vec(row.begin() + static_cast<long>(dim), row.end())});
    }
    if (ds.pairs.empty()) throw EmptyDataset(path.string() + ": no pairs");
    const fs::path side = sidecar_path(path);
    if (fs::exists(side)) {
        ds.provenance = read_json(side);
        ds.sigma_d = ds.provenance.value("sigma_d", 1.0);
        ds.rho_hat = ds.provenance.contains("rho_hat") ? ds.provenance["rho_hat"].get<double>()
                                                       : estimate_rho(ds.pairs);
    } else {
        ds.rho_hat = estimate_rho(ds.pairs);
    }
    return ds;
}

MlpDenoiser Checkpoint::model(bool use_ema) const {
    const Eigen::VectorXd& p = (use_ema && ema_weights) ? *ema_weights : weights;
    return MlpDenoiser(dims, emb_dim, sigma_d, rho, Mlp(widths, p));
}

Checkpoint Checkpoint::from(const MlpDenoiser& model, std::optional<Eigen::VectorXd> ema) {
    Checkpoint c;
    c.dims = model.dim();
    c.emb_dim = model.emb_dim();
    c.widths = model.net().widths();
    c.sigma_d = model.sigma_d();
    c.rho = model.rho();
    c.weights = model.net().params();
    c.ema_weights = std::move(ema);
    return c;
}

json checkpoint_to_json(const Checkpoint& c) {
    json j;
    j["version"] = kCheckpointVersion;
    j["dims"] = c.dims;
    j["emb_dim"] = c.emb_dim;
    j["widths"] = c.widths;
    j["sigma_d"] = c.sigma_d;
    j["rho"] = c.rho;
    j["weights"] = layers_to_json(c.widths, c.weights);
    if (c.ema_weights) j["ema_weights"] = layers_to_json(c.widths, *c.ema_weights);
    return j;
}

Checkpoint checkpoint_from_json(const json& j) {
    try {
        if (j.at("version").get<int>() != kCheckpointVersion) {
            throw IoError("checkpoint: unsupported version");
        }
        Checkpoint c;
        c.dims = j.at("dims").get<int>();
        c.emb_dim = j.at("emb_dim").get<int>();
        c.widths = j.at("widths").get<std::vector<int>>();
        c.sigma_d = j.at("sigma_d").get<double>();
        c.rho = j.at("rho").get<double>();
        if (c.widths.size() < 2 || c.widths.front() != 2 * c.dims + 2 * c.emb_dim ||
            c.widths.back() != c.dims) {
            throw IoError("checkpoint: widths do not match dims and emb_dim");
        }
        c.weights = layers_from_json(c.widths, j.at("weights"));
        if (j.contains("ema_weights")) c.ema_weights = layers_from_json(c.widths, j["ema_weights"]);
        return c;
    } catch (const json::exception& e) {
        throw IoError(std::string("checkpoint: ") + e.what());
    }
}

void save_checkpoint(const fs::path& path, const Checkpoint& ckpt) {
    write_json(path, checkpoint_to_json(ckpt));
}

Checkpoint load_checkpoint(const fs::path& path) { return checkpoint_from_json(read_json(path)); }

json read_json(const fs::path& path) {
    std::ifstream is(path);
    if (!is) throw IoError("cannot open " + path.string());
    try {
        return json::parse(is);
    } catch (const json::parse_error& e) {
        throw IoError(path.string() + ": " + e.what());
    }
}

void write_json(const fs::path& path, const json& j) {
    std::ofstream os(path);
    if (!os) throw IoError("cannot open " + path.string() + " for writing");
    os << j.dump(1) << '\n';
    if (!os) throw IoError("write failed: " + path.string());
}

}  // namespace disi
