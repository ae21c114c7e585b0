#pragma once

#include <cstdint>
#include <filesystem>
#include <map>
#include <optional>
#include <string>

#include "wsar/scene.hpp"

namespace wsar {

// On-disk dataset layout
// ----------------------
// <stem>.json  header: format tag, version, role, M, N, frequencies (Hz),
//              trajectory (m), seed, provenance, and a pointer to the
//              sample file.
// <stem>.bin   M x N complex samples, little-endian, frequency-major
//              (all positions of frequency 0, then frequency 1, ...).
//              Each sample is (re, im) as float64 ("complex128", default
//              and lossless) or float32 ("complex64").

enum class SampleType { complex128, complex64 };

struct DatasetMetadata {
    std::string role = "measured";
    std::optional<std::uint64_t> seed;
    std::map<std::string, std::string> provenance;
    SampleType sample_type = SampleType::complex128;
};

struct LoadedDataset {
    AcquisitionDataset data;
    DatasetMetadata meta;
};

inline constexpr const char* dataset_format_tag = "wsar-dataset";
inline constexpr int dataset_format_version = 1;

/// Writes header and sample file; `header_path` must end in ".json".
/// Throws ErrorKind::invalid_input on I/O failure.
void write_dataset(const std::filesystem::path& header_path, const AcquisitionDataset& data,
                   const DatasetMetadata& meta = {});

/// Reads and validates a dataset written by write_dataset (or converted
/// externally into the same layout).
LoadedDataset read_dataset(const std::filesystem::path& header_path);

/// CSV with header "n,x_m,y_m,z_m"; values printed with round-trip precision.
void write_trajectory_csv(const std::filesystem::path& path, const Trajectory& traj);
Trajectory read_trajectory_csv(const std::filesystem::path& path);

std::string to_string(SampleType t);
SampleType sample_type_from_string(const std::string& s);

}  // namespace wsar
