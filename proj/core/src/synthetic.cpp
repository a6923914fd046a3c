#include "llec/synthetic.hpp"

#include "llec/rng.hpp"

#include <cmath>
#include <stdexcept>

namespace llec {

PointCloud torus_dataset(const TorusSpec& spec)
{
    if (spec.block_size < 1 || spec.block_size > spec.bg_size)
        throw std::invalid_argument("torus_dataset: need 0 < block_size <= bg_size");
    const int n = spec.bg_size;
    const Index dim = static_cast<Index>(n) * n;

    Rng rng(spec.seed);
    Eigen::VectorXd background(dim);
    for (Index i = 0; i < dim; ++i)
        background(i) = uniform01(rng);

    Eigen::MatrixXd frames(dim, dim);
    for (int r = 0; r < n; ++r)
        for (int c = 0; c < n; ++c) {
            auto frame = frames.col(static_cast<Index>(r) * n + c);
            frame = background;
            for (int dr = 0; dr < spec.block_size; ++dr)
                for (int dc = 0; dc < spec.block_size; ++dc)
                    frame(static_cast<Index>((r + dr) % n) * n + (c + dc) % n) = 0.0;
        }
    return PointCloud(std::move(frames));
}

std::array<Index, 4> torus_adjacent(const TorusSpec& spec, Index frame)
{
    const Index n = spec.bg_size;
    const Index r = frame / n, c = frame % n;
    return {((r + n - 1) % n) * n + c, ((r + 1) % n) * n + c, r * n + (c + n - 1) % n,
            r * n + (c + 1) % n};
}

LineCloud line_cloud(const LineCloudSpec& spec)
{
    if (spec.num_lines < 1 || spec.points_per_line < 1 || spec.ambient_dim < 1)
        throw std::invalid_argument("line_cloud: counts must be positive");
    if (spec.noise_sigma < 0.0)
        throw std::invalid_argument("line_cloud: noise_sigma must be nonnegative");
    const int L = spec.num_lines;
    const int D = spec.ambient_dim;
    Rng rng(spec.seed);

    Eigen::MatrixXd anchors = spec.anchors;
    Eigen::MatrixXd directions = spec.directions;
    if (anchors.size() == 0) {
        anchors = Eigen::MatrixXd::Zero(D, L);
        for (int l = 0; l < L; ++l)
            anchors(D - 1, l) = spec.separation * l;
    }
    if (directions.size() == 0) {
        directions = Eigen::MatrixXd::Zero(D, L);
        for (int l = 0; l < L; ++l) {
            if (D == 1) {
                directions(0, l) = 1.0;
                continue;
            }
            Eigen::VectorXd v = Eigen::VectorXd::Zero(D);
            while (v.norm() < 1e-6)
                for (int c = 0; c + 1 < D; ++c)
                    v(c) = standard_normal(rng);
            directions.col(l) = v.normalized();
        }
    }
    if (anchors.rows() != D || anchors.cols() != L || directions.rows() != D || directions.cols() != L)
        throw std::invalid_argument("line_cloud: anchors/directions must be ambient_dim x num_lines");

    Eigen::MatrixXd colors = spec.colors;
    if (colors.size() == 0) {
        colors.resize(3, L);
        for (int l = 0; l < L; ++l)
            for (int c = 0; c < 3; ++c)
                colors(c, l) = ((l + 1) % 8 >> (2 - c)) & 1;
    }
    if (colors.cols() != L)
        throw std::invalid_argument("line_cloud: need one color per line");

    const Index p = static_cast<Index>(L) * spec.points_per_line;
    Eigen::MatrixXd pos(D, p), col(colors.rows(), p);
    std::vector<Index> labels(static_cast<std::size_t>(p));
    Index i = 0;
    for (int l = 0; l < L; ++l) {
        const Eigen::VectorXd dir = directions.col(l).normalized();
        for (int s = 0; s < spec.points_per_line; ++s, ++i) {
            const double t = (uniform01(rng) - 0.5) * spec.length;
            pos.col(i) = anchors.col(l) + t * dir;
            if (spec.noise_sigma > 0.0)
                for (int c = 0; c < D; ++c)
                    pos(c, i) += spec.noise_sigma * standard_normal(rng);
            col.col(i) = colors.col(l);
            labels[i] = l;
        }
    }
    return {PointCloud(std::move(col)), PointCloud(std::move(pos)), std::move(labels)};
}

Eigen::MatrixXd five_region_colors()
{
    Eigen::MatrixXd c(3, 5);
    c << 0.1, 0.9, 0.1, 0.1, 0.9,
         0.1, 0.1, 0.9, 0.1, 0.9,
         0.1, 0.1, 0.1, 0.9, 0.9;
    return c;
}

RegionImage region_image(const RegionImageSpec& spec)
{
    const Eigen::MatrixXd colors = spec.colors.size() ? spec.colors : five_region_colors();
    if (colors.rows() != 3 || colors.cols() < 1)
        throw std::invalid_argument("region_image: colors must be 3 x regions");
    if (spec.noise < 0.0)
        throw std::invalid_argument("region_image: noise must be nonnegative");
    const Index regions = colors.cols();

    RegionImage out{RasterImage(spec.width, spec.height), {}};
    out.labels.resize(static_cast<std::size_t>(out.image.pixel_count()));
    Rng rng(spec.seed);
    for (int y = 0; y < spec.height; ++y)
        for (int x = 0; x < spec.width; ++x) {
            const Index region = std::min<Index>(regions - 1, static_cast<Index>(x) * regions / spec.width);
            out.labels[static_cast<std::size_t>(y) * spec.width + x] = region;
            std::uint8_t* px = out.image.at(x, y);
            for (int c = 0; c < 3; ++c) {
                const double v = colors(c, region) + spec.noise * (2.0 * uniform01(rng) - 1.0);
                px[c] = to_channel(v);
            }
        }
    return out;
}

} // namespace llec
