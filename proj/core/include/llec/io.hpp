#pragma once

#include "llec/geometry.hpp"
#include "llec/lle.hpp"

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <span>
#include <vector>

namespace llec {

// Point clouds as CSV: one row per point, D comma-separated values, no header.
PointCloud read_cloud_csv(std::istream& in);
PointCloud read_cloud_csv(const std::filesystem::path& path);
void write_cloud_csv(std::ostream& out, const PointCloud& cloud);
void write_cloud_csv(const std::filesystem::path& path, const PointCloud& cloud);

/// Embedding as CSV, one row per point with d values.
void write_embedding_csv(const std::filesystem::path& path, const Embedding& embedding);

/// Parameters recorded next to an embedding.
struct EmbeddingProvenance
{
    std::uint32_t k = 0;
    std::uint32_t d = 0;
    std::uint64_t points = 0;
    double lambda = 0.0;
    double reg_tol = 0.0;

    friend bool operator==(const EmbeddingProvenance&, const EmbeddingProvenance&) = default;
};

/**
 * Binary sidecar, little-endian, 40 bytes:
 *   "LLEC"  magic
 *   u32     format version (1)
 *   u32 k, u32 d, u64 points, f64 lambda, f64 reg_tol
 */
void write_provenance(std::ostream& out, const EmbeddingProvenance& prov);
void write_provenance(const std::filesystem::path& path, const EmbeddingProvenance& prov);
EmbeddingProvenance read_provenance(std::istream& in);
EmbeddingProvenance read_provenance(const std::filesystem::path& path);

/// Integer labels as CSV, `columns` values per row (1 writes one per line).
void write_labels_csv(const std::filesystem::path& path, std::span<const Index> labels, Index columns = 1);
std::vector<Index> read_labels_csv(const std::filesystem::path& path);

/// "iteration,distortion" rows, iterations counted from 1.
void write_history_csv(const std::filesystem::path& path, std::span<const double> history);

} // namespace llec
