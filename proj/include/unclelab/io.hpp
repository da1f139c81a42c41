#pragma once

#include <optional>
#include <string>
#include <vector>

#include "json.hpp"
#include "unclelab/spectra.hpp"

namespace unclelab {

inline constexpr const char* kFormatVersion = "uncle-lab/1";

// Everything a run needs to be replayed; embedded in every JSON report.
struct RunConfig {
    std::string command;
    std::vector<std::string> inputs;
    std::uint64_t seed = 1;
    int n_lo = 0;
    int n_hi = 0;
    int sites = 3;
    int count = 8;
    std::vector<double> eps_list;
    double tol = limits::rank_rel_tol;
    std::string boundary = "periodic";
    std::string out_dir;
    std::string format = "csv";
    int workers = 0;  // 0 picks the hardware default
};

nlohmann::json to_json(const RunConfig& config);

// Matrices serialize as row-major nested arrays of [re, im] pairs, so tensor
// files survive a round trip bit-exactly.
nlohmann::json matrix_to_json(const Matrix& m);
Matrix json_to_matrix(const nlohmann::json& j);

nlohmann::json tensor_to_json(const MpsTensor& t);
MpsTensor json_to_tensor(const nlohmann::json& j);

nlohmann::json blocks_to_json(const BlockMps& c);
BlockMps json_to_blocks(const nlohmann::json& j);

nlohmann::json perturbation_to_json(const Perturbation& p);
Perturbation json_to_perturbation(const nlohmann::json& j);

nlohmann::json term_to_json(const ProjectorTerm& t);
ProjectorTerm json_to_term(const nlohmann::json& j);

// File loaders; malformed input maps to ParseError (exit code 2). A tensor
// file may hold a bare tensor or a block list; loaders for one kind reject
// the other by its "kind" tag.
nlohmann::json load_json(const std::string& path);
MpsTensor load_tensor(const std::string& path);
BlockMps load_blocks(const std::string& path);
Perturbation load_perturbation(const std::string& path);
ProjectorTerm load_term(const std::string& path);

void save_json(const std::string& path, const nlohmann::json& j);
void save_text(const std::string& path, const std::string& content);

// 17-significant-digit float text, locale independent.
std::string format_float(double v);

// CSV rows (n, index, eigenvalue) for a family of spectra.
std::string spectrum_csv(const std::vector<SpectrumReport>& reports);
nlohmann::json spectrum_to_json(const SpectrumReport& rep);

BoundaryKind parse_boundary(const std::string& s);

// Optional memoization keyed by UNCLE_LAB_CACHE; both calls are no-ops when
// the variable is unset.
std::string cache_key(const std::string& payload);
std::optional<std::string> cache_get(const std::string& key);
void cache_put(const std::string& key, const std::string& content);

}  // namespace unclelab
