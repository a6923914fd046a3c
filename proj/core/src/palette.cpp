#include "llec/palette.hpp"

#include "llec/imaging.hpp"
#include "llec/segmentation.hpp"

#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <string>

namespace llec {

namespace {

std::array<std::uint8_t, 3> rgb_of(const Eigen::Ref<const Eigen::VectorXd>& color)
{
    if (color.size() != 3)
        throw std::invalid_argument("palette: colors must be RGB triples");
    return {to_channel(color(0)), to_channel(color(1)), to_channel(color(2))};
}

bool skip_line(const std::string& line)
{
    const auto first = line.find_first_not_of(" \t\r");
    return first == std::string::npos || line[first] == '#';
}

} // namespace

Palette make_palette(const Clustering& clustering)
{
    Palette out;
    for (Index j = 0; j < clustering.size(); ++j) {
        const auto& c = clustering.clusters[j];
        out.push_back({j, static_cast<Index>(c.members.size()), rgb_of(c.prototype)});
    }
    return out;
}

Palette make_palette(const Codebook& codebook, std::span<const Index> assignment)
{
    std::vector<Index> counts(static_cast<std::size_t>(codebook.size()), 0);
    for (Index a : assignment)
        ++counts.at(static_cast<std::size_t>(a));
    Palette out;
    for (Index j = 0; j < codebook.size(); ++j)
        out.push_back({j, counts[j], rgb_of(codebook.centers.col(j))});
    return out;
}

Codebook codebook_from_palette(const Palette& palette)
{
    if (palette.empty())
        throw std::invalid_argument("palette is empty");
    Codebook out;
    out.centers.resize(3, static_cast<Index>(palette.size()));
    for (std::size_t j = 0; j < palette.size(); ++j)
        for (int c = 0; c < 3; ++c)
            out.centers(c, static_cast<Index>(j)) = palette[j].rgb[c] / 255.0;
    out.origin = "llec-palette";
    return out;
}

void write_palette(std::ostream& out, const Palette& palette)
{
    for (const auto& e : palette)
        out << e.id << ' ' << e.count << ' ' << int{e.rgb[0]} << ' ' << int{e.rgb[1]} << ' '
            << int{e.rgb[2]} << '\n';
}

void write_palette(const std::filesystem::path& path, const Palette& palette)
{
    std::ofstream out(path);
    if (!out)
        throw std::runtime_error("cannot write " + path.string());
    write_palette(out, palette);
}

Palette read_palette(std::istream& in)
{
    Palette out;
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (skip_line(line))
            continue;
        std::istringstream fields(line);
        long long id, count;
        int r, g, b;
        std::string extra;
        if (!(fields >> id >> count >> r >> g >> b) || (fields >> extra) || count < 0 ||
            r < 0 || r > 255 || g < 0 || g > 255 || b < 0 || b > 255)
            throw std::runtime_error("palette: malformed line " + std::to_string(lineno) + ": '" + line + "'");
        out.push_back({static_cast<Index>(id), static_cast<Index>(count),
                       {static_cast<std::uint8_t>(r), static_cast<std::uint8_t>(g),
                        static_cast<std::uint8_t>(b)}});
    }
    return out;
}

Palette read_palette(const std::filesystem::path& path)
{
    std::ifstream in(path);
    if (!in)
        throw std::runtime_error("cannot open " + path.string());
    return read_palette(in);
}

Eigen::MatrixXd read_color_table(const std::filesystem::path& path)
{
    std::ifstream in(path);
    if (!in)
        throw std::runtime_error("cannot open " + path.string());
    std::vector<std::array<int, 3>> rows;
    std::string line;
    while (std::getline(in, line)) {
        if (skip_line(line))
            continue;
        std::istringstream fields(line);
        std::array<int, 3> c{};
        if (!(fields >> c[0] >> c[1] >> c[2]))
            throw std::runtime_error("color table: malformed line '" + line + "'");
        for (int v : c)
            if (v < 0 || v > 255)
                throw std::runtime_error("color table: channel out of range in '" + line + "'");
        rows.push_back(c);
    }
    if (rows.empty())
        throw std::runtime_error("color table " + path.string() + " is empty");
    Eigen::MatrixXd out(3, static_cast<Index>(rows.size()));
    for (std::size_t j = 0; j < rows.size(); ++j)
        for (int c = 0; c < 3; ++c)
            out(c, static_cast<Index>(j)) = rows[j][c] / 255.0;
    return out;
}

} // namespace llec
