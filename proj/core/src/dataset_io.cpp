#include "wsar/dataset_io.hpp"

#include <algorithm>
#include <bit>
#include <cstdio>
#include <cstring>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "wsar/error.hpp"

namespace wsar {

namespace {

using nlohmann::json;

template <typename T>
void put_le(std::string& buf, T value) {
    using U = std::conditional_t<sizeof(T) == 8, std::uint64_t, std::uint32_t>;
    U bits = std::bit_cast<U>(value);
    for (std::size_t b = 0; b < sizeof(U); ++b) {
        buf.push_back(static_cast<char>(bits & 0xFF));
        bits >>= 8;
    }
}

template <typename T>
T get_le(const unsigned char* p) {
    using U = std::conditional_t<sizeof(T) == 8, std::uint64_t, std::uint32_t>;
    U bits = 0;
    for (std::size_t b = sizeof(U); b-- > 0;) {
        bits = (bits << 8) | p[b];
    }
    return std::bit_cast<T>(bits);
}

std::string format_double(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

std::filesystem::path sample_path_for(const std::filesystem::path& header_path) {
    auto p = header_path;
    p.replace_extension(".bin");
    return p;
}

void write_file(const std::filesystem::path& path, const std::string& bytes) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) {
        fail_input("cannot write " + path.string());
    }
    out.write(bytes.data(), static_cast<std::streamsize>(bytes.size()));
    if (!out) {
        fail_input("write failed for " + path.string());
    }
}

std::string read_file(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        fail_input("cannot open " + path.string());
    }
    std::ostringstream ss;
    ss << in.rdbuf();
    return std::move(ss).str();
}

}  // namespace

std::string to_string(SampleType t) {
    return t == SampleType::complex64 ? "complex64" : "complex128";
}

SampleType sample_type_from_string(const std::string& s) {
    if (s == "complex128") return SampleType::complex128;
    if (s == "complex64") return SampleType::complex64;
    fail_input("unknown sample dtype '" + s + "'");
}

void write_dataset(const std::filesystem::path& header_path, const AcquisitionDataset& data,
                   const DatasetMetadata& meta) {
    const auto& S = data.samples();
    const auto bin_path = sample_path_for(header_path);

    std::string bytes;
    const std::size_t width = meta.sample_type == SampleType::complex64 ? 8 : 16;
    bytes.reserve(S.size() * width);
    for (const auto& v : S) {
        if (meta.sample_type == SampleType::complex64) {
            put_le(bytes, static_cast<float>(v.real()));
            put_le(bytes, static_cast<float>(v.imag()));
        } else {
            put_le(bytes, v.real());
            put_le(bytes, v.imag());
        }
    }

    json traj = json::array();
    for (const auto& p : data.trajectory().positions()) {
        traj.push_back({p.x, p.y, p.z});
    }
    json header = {
        {"format", dataset_format_tag},
        {"version", dataset_format_version},
        {"role", meta.role},
        {"frequency_count", data.frequency_count()},
        {"position_count", data.position_count()},
        {"frequencies_hz", std::vector<double>(data.sweep().frequencies().begin(), data.sweep().frequencies().end())},
        {"trajectory_m", traj},
        {"samples",
         {{"file", bin_path.filename().string()},
          {"dtype", to_string(meta.sample_type)},
          {"byte_order", "little"},
          {"layout", "frequency-major"}}},
        {"provenance", meta.provenance},
    };
    header["seed"] = meta.seed ? json(*meta.seed) : json(nullptr);

    write_file(bin_path, bytes);
    write_file(header_path, header.dump(2) + "\n");
}

LoadedDataset read_dataset(const std::filesystem::path& header_path) {
    json header;
    try {
        header = json::parse(read_file(header_path));
    } catch (const json::parse_error& e) {
        fail_input("malformed dataset header " + header_path.string() + ": " + e.what());
    }
    try {
        if (header.at("format").get<std::string>() != dataset_format_tag) {
            fail_input("not a dataset header: " + header_path.string());
        }
        if (header.at("version").get<int>() != dataset_format_version) {
            fail_input("unsupported dataset version in " + header_path.string());
        }
        const auto M = header.at("frequency_count").get<std::size_t>();
        const auto N = header.at("position_count").get<std::size_t>();
        auto freqs = header.at("frequencies_hz").get<std::vector<double>>();
        std::vector<Vec3> pos;
        for (const auto& p : header.at("trajectory_m")) {
            if (p.size() != 3) fail_input("trajectory entries must have three coordinates");
            pos.push_back({p[0].get<double>(), p[1].get<double>(), p[2].get<double>()});
        }
        if (freqs.size() != M || pos.size() != N) {
            fail_input("dataset header counts disagree with its arrays");
        }
        const auto& samples = header.at("samples");
        if (samples.value("byte_order", "little") != "little" ||
            samples.value("layout", "frequency-major") != "frequency-major") {
            fail_input("unsupported sample byte order or layout");
        }
        DatasetMetadata meta;
        meta.role = header.value("role", "measured");
        meta.sample_type = sample_type_from_string(samples.value("dtype", "complex128"));
        if (header.contains("seed") && !header["seed"].is_null()) {
            meta.seed = header["seed"].get<std::uint64_t>();
        }
        if (header.contains("provenance")) {
            meta.provenance = header["provenance"].get<std::map<std::string, std::string>>();
        }

        const auto bin_path = header_path.parent_path() / samples.at("file").get<std::string>();
        const std::string bytes = read_file(bin_path);
        const std::size_t width = meta.sample_type == SampleType::complex64 ? 8 : 16;
        if (bytes.size() != M * N * width) {
            fail_input("sample file " + bin_path.string() + " has " + std::to_string(bytes.size()) +
                       " bytes, expected " + std::to_string(M * N * width));
        }
        Matrix<Complex> S(M, N);
        const auto* p = reinterpret_cast<const unsigned char*>(bytes.data());
        for (auto& v : S) {
            if (meta.sample_type == SampleType::complex64) {
                v = {get_le<float>(p), get_le<float>(p + 4)};
            } else {
                v = {get_le<double>(p), get_le<double>(p + 8)};
            }
            p += width;
        }
        return {AcquisitionDataset(FrequencySweep(std::move(freqs)), Trajectory(std::move(pos)), std::move(S)),
                std::move(meta)};
    } catch (const json::exception& e) {
        fail_input("invalid dataset header " + header_path.string() + ": " + e.what());
    }
}

void write_trajectory_csv(const std::filesystem::path& path, const Trajectory& traj) {
    std::string out = "n,x_m,y_m,z_m\n";
    for (std::size_t n = 0; n < traj.size(); ++n) {
        const auto& p = traj[n];
        out += std::to_string(n) + "," + format_double(p.x) + "," + format_double(p.y) + "," +
               format_double(p.z) + "\n";
    }
    write_file(path, out);
}

Trajectory read_trajectory_csv(const std::filesystem::path& path) {
    std::istringstream in(read_file(path));
    std::string line;
    std::vector<Vec3> pos;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty() || line[0] == '#') continue;
        if (lineno == 1 && line.rfind("n,", 0) == 0) continue;
        std::replace(line.begin(), line.end(), ',', ' ');
        std::istringstream fields(line);
        long long n = 0;
        Vec3 p;
        if (!(fields >> n >> p.x >> p.y >> p.z)) {
            fail_input("malformed trajectory line " + std::to_string(lineno) + " in " + path.string());
        }
        pos.push_back(p);
    }
    return Trajectory(std::move(pos));
}

}  // namespace wsar
