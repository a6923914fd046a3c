#include "llec/io.hpp"

#include <array>
#include <bit>
#include <charconv>
#include <cstring>
#include <fstream>
#include <istream>
#include <ostream>
#include <stdexcept>
#include <string>
#include <string_view>

namespace llec {

namespace {

void put_double(std::ostream& out, double v)
{
    char buf[32];
    const auto res = std::to_chars(buf, buf + sizeof buf, v);
    out.write(buf, res.ptr - buf);
}

std::string_view trim(std::string_view s)
{
    while (!s.empty() && (s.front() == ' ' || s.front() == '\t'))
        s.remove_prefix(1);
    while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r'))
        s.remove_suffix(1);
    return s;
}

template <typename T>
T parse_field(std::string_view field, int lineno)
{
    field = trim(field);
    T value{};
    const auto res = std::from_chars(field.data(), field.data() + field.size(), value);
    if (res.ec != std::errc() || res.ptr != field.data() + field.size())
        throw std::runtime_error("csv: line " + std::to_string(lineno) + ": bad value '" +
                                 std::string(field) + "'");
    return value;
}

template <typename T>
std::vector<T> split_line(std::string_view line, int lineno)
{
    std::vector<T> out;
    std::size_t start = 0;
    while (true) {
        const auto comma = line.find(',', start);
        out.push_back(parse_field<T>(line.substr(start, comma - start), lineno));
        if (comma == std::string_view::npos)
            break;
        start = comma + 1;
    }
    return out;
}

template <typename T>
void put_le(std::ostream& out, T value)
{
    std::array<unsigned char, sizeof(T)> bytes;
    std::uint64_t bits = 0;
    std::memcpy(&bits, &value, sizeof(T));
    for (std::size_t i = 0; i < sizeof(T); ++i)
        bytes[i] = static_cast<unsigned char>(bits >> (8 * i));
    out.write(reinterpret_cast<const char*>(bytes.data()), sizeof(T));
}

template <typename T>
T get_le(std::istream& in)
{
    std::array<unsigned char, sizeof(T)> bytes;
    in.read(reinterpret_cast<char*>(bytes.data()), sizeof(T));
    if (in.gcount() != static_cast<std::streamsize>(sizeof(T)))
        throw std::runtime_error("provenance: truncated file");
    std::uint64_t bits = 0;
    for (std::size_t i = 0; i < sizeof(T); ++i)
        bits |= std::uint64_t{bytes[i]} << (8 * i);
    T value;
    std::memcpy(&value, &bits, sizeof(T));
    return value;
}

std::ofstream open_out(const std::filesystem::path& path, std::ios::openmode mode = std::ios::out)
{
    std::ofstream out(path, mode);
    if (!out)
        throw std::runtime_error("cannot write " + path.string());
    return out;
}

std::ifstream open_in(const std::filesystem::path& path, std::ios::openmode mode = std::ios::in)
{
    std::ifstream in(path, mode);
    if (!in)
        throw std::runtime_error("cannot open " + path.string());
    return in;
}

constexpr char kMagic[4] = {'L', 'L', 'E', 'C'};
constexpr std::uint32_t kProvenanceVersion = 1;

} // namespace

PointCloud read_cloud_csv(std::istream& in)
{
    std::vector<std::vector<double>> rows;
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (trim(line).empty())
            continue;
        rows.push_back(split_line<double>(line, lineno));
        if (rows.back().size() != rows.front().size())
            throw std::runtime_error("csv: line " + std::to_string(lineno) + " has " +
                                     std::to_string(rows.back().size()) + " values, expected " +
                                     std::to_string(rows.front().size()));
    }
    if (rows.empty())
        throw std::runtime_error("csv: no points");
    Eigen::MatrixXd data(static_cast<Index>(rows.front().size()), static_cast<Index>(rows.size()));
    for (std::size_t j = 0; j < rows.size(); ++j)
        for (std::size_t c = 0; c < rows[j].size(); ++c)
            data(static_cast<Index>(c), static_cast<Index>(j)) = rows[j][c];
    return PointCloud(std::move(data));
}

PointCloud read_cloud_csv(const std::filesystem::path& path)
{
    auto in = open_in(path);
    return read_cloud_csv(in);
}

void write_cloud_csv(std::ostream& out, const PointCloud& cloud)
{
    for (Index j = 0; j < cloud.size(); ++j) {
        for (Index c = 0; c < cloud.dim(); ++c) {
            if (c)
                out.put(',');
            put_double(out, cloud.data()(c, j));
        }
        out.put('\n');
    }
}

void write_cloud_csv(const std::filesystem::path& path, const PointCloud& cloud)
{
    auto out = open_out(path);
    write_cloud_csv(out, cloud);
}

void write_embedding_csv(const std::filesystem::path& path, const Embedding& embedding)
{
    write_cloud_csv(path, PointCloud(embedding.Y));
}

void write_provenance(std::ostream& out, const EmbeddingProvenance& prov)
{
    out.write(kMagic, 4);
    put_le(out, kProvenanceVersion);
    put_le(out, prov.k);
    put_le(out, prov.d);
    put_le(out, prov.points);
    put_le(out, prov.lambda);
    put_le(out, prov.reg_tol);
}

void write_provenance(const std::filesystem::path& path, const EmbeddingProvenance& prov)
{
    auto out = open_out(path, std::ios::binary);
    write_provenance(out, prov);
}

EmbeddingProvenance read_provenance(std::istream& in)
{
    char magic[4];
    in.read(magic, 4);
    if (in.gcount() != 4 || std::memcmp(magic, kMagic, 4) != 0)
        throw std::runtime_error("provenance: bad magic");
    const auto version = get_le<std::uint32_t>(in);
    if (version != kProvenanceVersion)
        throw std::runtime_error("provenance: unsupported version " + std::to_string(version));
    EmbeddingProvenance p;
    p.k = get_le<std::uint32_t>(in);
    p.d = get_le<std::uint32_t>(in);
    p.points = get_le<std::uint64_t>(in);
    p.lambda = get_le<double>(in);
    p.reg_tol = get_le<double>(in);
    return p;
}

EmbeddingProvenance read_provenance(const std::filesystem::path& path)
{
    auto in = open_in(path, std::ios::binary);
    return read_provenance(in);
}

void write_labels_csv(const std::filesystem::path& path, std::span<const Index> labels, Index columns)
{
    if (columns < 1)
        throw std::invalid_argument("labels csv: columns must be positive");
    auto out = open_out(path);
    for (std::size_t i = 0; i < labels.size(); ++i) {
        out << labels[i];
        out.put((static_cast<Index>(i + 1) % columns == 0 || i + 1 == labels.size()) ? '\n' : ',');
    }
}

std::vector<Index> read_labels_csv(const std::filesystem::path& path)
{
    auto in = open_in(path);
    std::vector<Index> out;
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (trim(line).empty())
            continue;
        for (long long v : split_line<long long>(line, lineno))
            out.push_back(static_cast<Index>(v));
    }
    return out;
}

void write_history_csv(const std::filesystem::path& path, std::span<const double> history)
{
    auto out = open_out(path);
    out << "iteration,distortion\n";
    for (std::size_t i = 0; i < history.size(); ++i) {
        out << i + 1 << ',';
        put_double(out, history[i]);
        out << '\n';
    }
}

} // namespace llec
