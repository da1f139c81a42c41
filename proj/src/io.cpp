#include "unclelab/io.hpp"

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

namespace unclelab {

using nlohmann::json;

json to_json(const RunConfig& config) {
    return json{{"command", config.command}, {"inputs", config.inputs},
                {"seed", config.seed},       {"n_lo", config.n_lo},
                {"n_hi", config.n_hi},       {"sites", config.sites},
                {"count", config.count},     {"eps_list", config.eps_list},
                {"tol", config.tol},         {"boundary", config.boundary},
                {"out_dir", config.out_dir}, {"format", config.format},
                {"workers", config.workers}};
}

json matrix_to_json(const Matrix& m) {
    json rows = json::array();
    for (Eigen::Index i = 0; i < m.rows(); ++i) {
        json row = json::array();
        for (Eigen::Index j = 0; j < m.cols(); ++j)
            row.push_back(json::array({m(i, j).real(), m(i, j).imag()}));
        rows.push_back(std::move(row));
    }
    return rows;
}

Matrix json_to_matrix(const json& j) {
    try {
        auto rows = static_cast<Eigen::Index>(j.size());
        if (rows == 0) throw ParseError("matrix: no rows");
        auto cols = static_cast<Eigen::Index>(j.at(0).size());
        Matrix m(rows, cols);
        for (Eigen::Index r = 0; r < rows; ++r) {
            const json& row = j.at(static_cast<size_t>(r));
            if (static_cast<Eigen::Index>(row.size()) != cols)
                throw ParseError("matrix: ragged rows");
            for (Eigen::Index c = 0; c < cols; ++c) {
                const json& cell = row.at(static_cast<size_t>(c));
                m(r, c) = cd(cell.at(0).get<double>(), cell.at(1).get<double>());
            }
        }
        return m;
    } catch (const json::exception& e) {
        throw ParseError(std::string("matrix: ") + e.what());
    }
}

json tensor_to_json(const MpsTensor& t) {
    json mats = json::array();
    for (int i = 0; i < t.d(); ++i) mats.push_back(matrix_to_json(t.mat(i)));
    return json{{"d", t.d()}, {"rows", t.rows()}, {"cols", t.cols()}, {"mats", mats}};
}

MpsTensor json_to_tensor(const json& j) {
    try {
        const json& mats = j.at("mats");
        std::vector<Matrix> out;
        out.reserve(mats.size());
        for (const json& m : mats) out.push_back(json_to_matrix(m));
        if (out.empty()) throw ParseError("tensor: empty physical index");
        MpsTensor t(std::move(out));
        if (t.d() != j.at("d").get<int>() ||
            t.rows() != j.at("rows").get<Eigen::Index>() ||
            t.cols() != j.at("cols").get<Eigen::Index>())
            throw ParseError("tensor: declared shape disagrees with matrices");
        return t;
    } catch (const json::exception& e) {
        throw ParseError(std::string("tensor: ") + e.what());
    }
}

json blocks_to_json(const BlockMps& c) {
    json blocks = json::array();
    for (int b = 0; b < c.block_count(); ++b) blocks.push_back(tensor_to_json(c.block(b)));
    return json{{"format", kFormatVersion}, {"kind", "blocks"}, {"blocks", blocks}};
}

BlockMps json_to_blocks(const json& j) {
    try {
        const json& blocks = j.at("blocks");
        std::vector<MpsTensor> out;
        out.reserve(blocks.size());
        for (const json& b : blocks) out.push_back(json_to_tensor(b));
        return BlockMps(std::move(out));
    } catch (const json::exception& e) {
        throw ParseError(std::string("blocks: ") + e.what());
    }
}

json perturbation_to_json(const Perturbation& p) {
    return json{{"format", kFormatVersion},
                {"kind", "perturbation"},
                {"pa", tensor_to_json(p.pa)},
                {"pb", tensor_to_json(p.pb)},
                {"r", tensor_to_json(p.r)},
                {"l", tensor_to_json(p.l)}};
}

Perturbation json_to_perturbation(const json& j) {
    try {
        Perturbation p;
        p.pa = json_to_tensor(j.at("pa"));
        p.pb = json_to_tensor(j.at("pb"));
        p.r = json_to_tensor(j.at("r"));
        p.l = json_to_tensor(j.at("l"));
        return p;
    } catch (const json::exception& e) {
        throw ParseError(std::string("perturbation: ") + e.what());
    }
}

json term_to_json(const ProjectorTerm& t) {
    return json{{"format", kFormatVersion},
                {"kind", "term"},
                {"support", t.support},
                {"local_dim", t.local_dim},
                {"matrix", matrix_to_json(t.matrix)}};
}

ProjectorTerm json_to_term(const json& j) {
    try {
        ProjectorTerm t;
        t.support = j.at("support").get<int>();
        t.local_dim = j.at("local_dim").get<int>();
        t.matrix = json_to_matrix(j.at("matrix"));
        if (t.support < 1 || t.local_dim < 2)
            throw ParseError("term: support and local_dim out of range");
        if (t.matrix.rows() != t.matrix.cols() ||
            t.matrix.rows() != int_pow(t.local_dim, t.support))
            throw ParseError("term: matrix size disagrees with local_dim^support");
        return t;
    } catch (const json::exception& e) {
        throw ParseError(std::string("term: ") + e.what());
    }
}

json load_json(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ParseError("cannot open " + path);
    try {
        return json::parse(in);
    } catch (const json::exception& e) {
        throw ParseError(path + ": " + e.what());
    }
}

namespace {

void require_kind(const json& j, const std::string& path, const char* kind) {
    if (j.contains("kind") && j.at("kind") != kind)
        throw ParseError(path + ": expected kind '" + kind + "', found '" +
                         j.at("kind").get<std::string>() + "'");
}

}  // namespace

MpsTensor load_tensor(const std::string& path) {
    json j = load_json(path);
    require_kind(j, path, "tensor");
    return json_to_tensor(j);
}

BlockMps load_blocks(const std::string& path) {
    json j = load_json(path);
    require_kind(j, path, "blocks");
    return json_to_blocks(j);
}

Perturbation load_perturbation(const std::string& path) {
    json j = load_json(path);
    require_kind(j, path, "perturbation");
    return json_to_perturbation(j);
}

ProjectorTerm load_term(const std::string& path) {
    json j = load_json(path);
    require_kind(j, path, "term");
    return json_to_term(j);
}

void save_text(const std::string& path, const std::string& content) {
    std::filesystem::path p(path);
    if (p.has_parent_path()) std::filesystem::create_directories(p.parent_path());
    std::ofstream out(p, std::ios::binary | std::ios::trunc);
    if (!out) throw ParseError("cannot write " + path);
    out << content;
}

void save_json(const std::string& path, const json& j) {
    // Keys are kept sorted by the container, so reruns are byte identical.
    save_text(path, j.dump(2) + "\n");
}

std::string format_float(double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

std::string spectrum_csv(const std::vector<SpectrumReport>& reports) {
    std::ostringstream out;
    out << "n,index,eigenvalue\n";
    for (const SpectrumReport& rep : reports)
        for (Eigen::Index i = 0; i < rep.values.size(); ++i)
            out << rep.sites << ',' << i << ',' << format_float(rep.values[i]) << '\n';
    return out.str();
}

json spectrum_to_json(const SpectrumReport& rep) {
    std::vector<double> values(rep.values.data(), rep.values.data() + rep.values.size());
    std::vector<double> residuals(rep.residuals.data(),
                                  rep.residuals.data() + rep.residuals.size());
    return json{{"n", rep.sites},
                {"boundary", rep.boundary == BoundaryKind::Periodic ? "periodic" : "open"},
                {"method", rep.method},
                {"eigenvalues", values},
                {"residuals", residuals},
                {"kernel_dim", rep.kernel_dim},
                {"gap", rep.gap},
                {"tol", rep.tol}};
}

BoundaryKind parse_boundary(const std::string& s) {
    if (s == "periodic") return BoundaryKind::Periodic;
    if (s == "open") return BoundaryKind::Open;
    throw ParseError("boundary must be 'open' or 'periodic', got '" + s + "'");
}

std::string cache_key(const std::string& payload) {
    // FNV-1a, 64 bit; stability matters more than collision strength here.
    std::uint64_t h = 1469598103934665603ull;
    for (unsigned char c : payload) {
        h ^= c;
        h *= 1099511628211ull;
    }
    char buf[17];
    std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
    return buf;
}

namespace {

std::optional<std::filesystem::path> cache_dir() {
    const char* dir = std::getenv("UNCLE_LAB_CACHE");
    if (dir == nullptr || *dir == '\0') return std::nullopt;
    return std::filesystem::path(dir);
}

}  // namespace

std::optional<std::string> cache_get(const std::string& key) {
    auto dir = cache_dir();
    if (!dir) return std::nullopt;
    std::ifstream in(*dir / (key + ".json"), std::ios::binary);
    if (!in) return std::nullopt;
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

void cache_put(const std::string& key, const std::string& content) {
    auto dir = cache_dir();
    if (!dir) return;
    std::error_code ec;
    std::filesystem::create_directories(*dir, ec);
    if (ec) return;
    std::ofstream out(*dir / (key + ".json"), std::ios::binary | std::ios::trunc);
    if (out) out << content;
}

}  // namespace unclelab
