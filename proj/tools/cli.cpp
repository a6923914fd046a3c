#include "cli.hpp"

#include "llec/imaging.hpp"
#include "llec/io.hpp"
#include "llec/lle.hpp"
#include "llec/palette.hpp"
#include "llec/segmentation.hpp"
#include "llec/synthetic.hpp"
#include "llec/vq.hpp"

#include <CLI11.hpp>

#ifdef _OPENMP
#include <omp.h>
#endif

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <map>
#include <optional>
#include <ostream>
#include <stdexcept>

namespace llec::cli {

namespace fs = std::filesystem;

namespace {

struct LleFlags
{
    int k = 4;
    int d = 2;
    double lambda = 1e-9;
    double reg_tol = 1e-3;
    bool no_perturb = false;
    bool cycle = false;

    void add(CLI::App& app)
    {
        app.add_option("--k", k, "Nearest neighbors per point")->check(CLI::PositiveNumber)->capture_default_str();
        app.add_option("--d", d, "Embedding dimension")->check(CLI::PositiveNumber)->capture_default_str();
        app.add_option("--lambda", lambda, "Perturbation scale for M + lambda*T")
            ->check(CLI::NonNegativeNumber)->capture_default_str();
        app.add_option("--reg-tol,--reg_tol", reg_tol, "Weight regularization tolerance")
            ->check(CLI::PositiveNumber)->capture_default_str();
        app.add_flag("--no-perturb", no_perturb, "Do not add lambda*T");
        app.add_flag("--cycle", cycle, "Use the circulant cycle Laplacian instead of the path Laplacian");
    }

    LleParams params() const
    {
        LleParams p;
        p.k = k;
        p.d = d;
        p.lambda = no_perturb ? 0.0 : lambda;
        p.reg_tol = reg_tol;
        p.shape = cycle ? PerturbationShape::Cycle : PerturbationShape::Path;
        return p;
    }
};

bool is_csv(const fs::path& path)
{
    return path.extension() == ".csv";
}

PointCloud load_cloud(const fs::path& path, ImageLayout* layout = nullptr)
{
    if (!fs::exists(path))
        throw std::runtime_error("input file not found: " + path.string());
    if (is_csv(path))
        return read_cloud_csv(path);
    auto [cloud, lay] = image_to_cloud(read_image(path));
    if (layout)
        *layout = lay;
    return cloud;
}

RasterImage load_image(const fs::path& path)
{
    if (!fs::exists(path))
        throw std::runtime_error("input file not found: " + path.string());
    return read_image(path);
}

void guard_size(Index p, Index cap)
{
    if (p > cap)
        throw std::runtime_error("image has " + std::to_string(p) + " pixels; LLE needs p x p-scale work and the cap is " +
                                 std::to_string(cap) + ". Downsample the image (or raise --max-points).");
}

void write_text(const fs::path& path, const std::string& text)
{
    std::ofstream out(path);
    if (!out)
        throw std::runtime_error("cannot write " + path.string());
    out << text;
}

const std::map<std::string, SeedKind> kStrategies = {
    {"random", SeedKind::Random},
    {"densest-ball", SeedKind::DensestBall},
    {"bth-neighbor", SeedKind::BthNeighbor},
    {"min-sv-ratio", SeedKind::MinSvRatio},
};

const std::map<std::string, InitKind> kInits = {
    {"llec-palette", InitKind::LlecPalette},
    {"hand-identified", InitKind::HandIdentified},
    {"random-rgb", InitKind::RandomRgb},
    {"random-from-data", InitKind::RandomFromData},
};

} // namespace

void apply_thread_limit()
{
#ifdef _OPENMP
    if (const char* env = std::getenv("LLEC_THREADS")) {
        const int n = std::atoi(env);
        if (n > 0)
            omp_set_num_threads(n);
    }
#endif
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err)
{
    CLI::App app{"Locally linear embedding clustering and color quantization", "llec"};
    app.require_subcommand(1);
    app.fallthrough(); // --seed may follow the subcommand
    std::uint64_t seed = 0;
    app.add_option("--seed", seed, "Seed for every random choice")->capture_default_str();

    // embed
    auto* embed_cmd = app.add_subcommand("embed", "LLE embedding of a CSV point cloud or an image");
    fs::path embed_in, embed_out, embed_prov;
    LleFlags embed_lle;
    embed_cmd->add_option("-i,--input", embed_in, "CSV cloud or PPM/PNG image")->required();
    embed_cmd->add_option("-o,--output", embed_out, "Embedding CSV (p rows of d values)")->required();
    embed_cmd->add_option("--provenance", embed_prov, "Binary sidecar (default: <output>.prov)");
    embed_lle.add(*embed_cmd);

    // quantize
    auto* quant_cmd = app.add_subcommand("quantize", "LLEC color quantization of an image");
    fs::path q_in, q_out, q_palette, q_assign, q_report, q_means;
    LleFlags q_lle;
    double eps = 0.4;
    std::optional<double> eps1, eps2, eps_ball;
    int m = 1, b = 50;
    std::string strategy = "bth-neighbor";
    Index max_points = 20000;
    quant_cmd->add_option("-i,--input", q_in, "PPM/PNG image")->required();
    quant_cmd->add_option("-o,--output", q_out, "Reconstructed image (.ppm or .png)")->required();
    quant_cmd->add_option("--palette", q_palette, "Palette file (id count r g b)");
    quant_cmd->add_option("--assignment", q_assign, "Per-pixel cluster ids as CSV, one image row per line");
    quant_cmd->add_option("--report", q_report, "Quality report (default: stdout)");
    quant_cmd->add_option("--embedding-means", q_means, "Per-cluster mean embedding vectors as CSV");
    quant_cmd->add_option("--eps", eps, "Sets eps1 = eps2")->check(CLI::PositiveNumber)->capture_default_str();
    quant_cmd->add_option("--eps1", eps1, "Subspace residual tolerance")->check(CLI::PositiveNumber);
    quant_cmd->add_option("--eps2", eps2, "Color distance tolerance")->check(CLI::PositiveNumber);
    quant_cmd->add_option("--eps-ball,--eps_ball", eps_ball, "Ball radius for the local SVD (default eps1)")
        ->check(CLI::PositiveNumber);
    quant_cmd->add_option("--m", m, "Subspace dimension")->check(CLI::PositiveNumber)->capture_default_str();
    quant_cmd->add_option("--strategy", strategy, "Seed strategy")
        ->check(CLI::IsMember({"random", "densest-ball", "bth-neighbor", "min-sv-ratio"}))
        ->capture_default_str();
    quant_cmd->add_option("--b", b, "Neighbor rank for bth-neighbor")->check(CLI::PositiveNumber)->capture_default_str();
    quant_cmd->add_option("--max-points,--max_points", max_points, "Refuse images with more pixels")
        ->check(CLI::PositiveNumber)->capture_default_str();
    q_lle.add(*quant_cmd);

    // segment
    auto* seg_cmd = app.add_subcommand("segment", "Subspace segmentation of a precomputed embedding");
    fs::path s_emb, s_colors, s_palette, s_assign;
    double s_eps = 0.4;
    std::optional<double> s_eps1, s_eps2, s_eps_ball;
    int s_m = 1, s_b = 50;
    std::string s_strategy = "bth-neighbor";
    seg_cmd->add_option("--embedding", s_emb, "Embedding CSV from 'llec embed'")->required();
    seg_cmd->add_option("--colors", s_colors, "Colors: CSV cloud or the PPM/PNG image that was embedded")->required();
    seg_cmd->add_option("--palette", s_palette, "Palette file (id count r g b)")->required();
    seg_cmd->add_option("--assignment", s_assign, "Per-point cluster ids as CSV");
    seg_cmd->add_option("--eps", s_eps, "Sets eps1 = eps2")->check(CLI::PositiveNumber)->capture_default_str();
    seg_cmd->add_option("--eps1", s_eps1)->check(CLI::PositiveNumber);
    seg_cmd->add_option("--eps2", s_eps2)->check(CLI::PositiveNumber);
    seg_cmd->add_option("--eps-ball,--eps_ball", s_eps_ball)->check(CLI::PositiveNumber);
    seg_cmd->add_option("--m", s_m)->check(CLI::PositiveNumber)->capture_default_str();
    seg_cmd->add_option("--strategy", s_strategy)
        ->check(CLI::IsMember({"random", "densest-ball", "bth-neighbor", "min-sv-ratio"}))
        ->capture_default_str();
    seg_cmd->add_option("--b", s_b)->check(CLI::PositiveNumber)->capture_default_str();

    // lbg
    auto* lbg_cmd = app.add_subcommand("lbg", "LBG vector quantization of an image");
    fs::path l_in, l_out, l_codebook, l_history, l_palette_in, l_hand, l_report, l_assign;
    std::string init = "random-from-data";
    Index n_centers = 25;
    int max_iters = 15;
    double stop_tol = 0.0;
    bool reseed_empty = false;
    lbg_cmd->add_option("-i,--input", l_in, "PPM/PNG image")->required();
    lbg_cmd->add_option("-o,--output", l_out, "Quantized image")->required();
    lbg_cmd->add_option("--codebook", l_codebook, "Final codebook in palette format");
    lbg_cmd->add_option("--history", l_history, "Distortion history CSV");
    lbg_cmd->add_option("--assignment", l_assign, "Per-pixel center ids as CSV");
    lbg_cmd->add_option("--report", l_report, "Quality report (default: stdout)");
    lbg_cmd->add_option("--init", init, "Center initialization")
        ->check(CLI::IsMember({"llec-palette", "hand-identified", "random-rgb", "random-from-data"}))
        ->capture_default_str();
    lbg_cmd->add_option("--palette", l_palette_in, "Palette from quantize (init = llec-palette)");
    lbg_cmd->add_option("--hand-colors", l_hand, "Named colors, 'r g b' per line (init = hand-identified)");
    lbg_cmd->add_option("--n-centers,--n_centers", n_centers, "Random center count")
        ->check(CLI::PositiveNumber)->capture_default_str();
    lbg_cmd->add_option("--max-iters,--max_iters", max_iters, "LBG iterations")
        ->check(CLI::PositiveNumber)->capture_default_str();
    lbg_cmd->add_option("--stop-tol,--stop_tol", stop_tol, "Relative improvement stop threshold")
        ->check(CLI::NonNegativeNumber)->capture_default_str();
    lbg_cmd->add_flag("--reseed-empty", reseed_empty, "Move empty centers to the farthest point");

    // synth
    auto* synth_cmd = app.add_subcommand("synth", "Synthetic data sets");
    synth_cmd->require_subcommand(1);
    synth_cmd->fallthrough();
    auto* torus_cmd = synth_cmd->add_subcommand("torus", "Translated zero block over a noise background");
    fs::path t_out;
    TorusSpec tspec;
    torus_cmd->add_option("-o,--output", t_out, "CSV, one frame per row")->required();
    torus_cmd->add_option("--bg-size", tspec.bg_size)->check(CLI::PositiveNumber)->capture_default_str();
    torus_cmd->add_option("--block-size", tspec.block_size)->check(CLI::PositiveNumber)->capture_default_str();

    auto* lines_cmd = synth_cmd->add_subcommand("lines", "Colored points along noisy lines");
    fs::path ln_colors, ln_pos, ln_labels;
    LineCloudSpec lspec;
    lines_cmd->add_option("--colors", ln_colors, "Color CSV")->required();
    lines_cmd->add_option("--positions", ln_pos, "Position CSV")->required();
    lines_cmd->add_option("--labels", ln_labels, "Generating line per point");
    lines_cmd->add_option("--lines", lspec.num_lines)->check(CLI::PositiveNumber)->capture_default_str();
    lines_cmd->add_option("--points", lspec.points_per_line)->check(CLI::PositiveNumber)->capture_default_str();
    lines_cmd->add_option("--dim", lspec.ambient_dim)->check(CLI::PositiveNumber)->capture_default_str();
    lines_cmd->add_option("--sigma", lspec.noise_sigma)->check(CLI::NonNegativeNumber)->capture_default_str();
    lines_cmd->add_option("--separation", lspec.separation)->capture_default_str();
    lines_cmd->add_option("--length", lspec.length)->check(CLI::PositiveNumber)->capture_default_str();

    auto* image_cmd = synth_cmd->add_subcommand("image", "Flat color bands plus uniform noise");
    fs::path im_out, im_labels;
    RegionImageSpec ispec;
    image_cmd->add_option("-o,--output", im_out, "Image (.ppm or .png)")->required();
    image_cmd->add_option("--labels", im_labels, "Region per pixel as CSV");
    image_cmd->add_option("--width", ispec.width)->check(CLI::PositiveNumber)->capture_default_str();
    image_cmd->add_option("--height", ispec.height)->check(CLI::PositiveNumber)->capture_default_str();
    image_cmd->add_option("--noise", ispec.noise)->check(CLI::NonNegativeNumber)->capture_default_str();

    // report
    auto* report_cmd = app.add_subcommand("report", "Distortion and color counts of a quantized image");
    fs::path r_orig, r_quant, r_out;
    Index r_clusters = 0;
    report_cmd->add_option("--original", r_orig)->required();
    report_cmd->add_option("--quantized", r_quant)->required();
    report_cmd->add_option("--clusters", r_clusters, "S or the number of centers (default: colors after)");
    report_cmd->add_option("-o,--output", r_out, "Write the report here instead of stdout");

    std::vector<const char*> argv{"llec"};
    for (const auto& a : args)
        argv.push_back(a.c_str());
    try {
        app.parse(static_cast<int>(argv.size()), argv.data());
    } catch (const CLI::ParseError& e) {
        return app.exit(e, out, err);
    }

    try {
        if (*embed_cmd) {
            const PointCloud cloud = load_cloud(embed_in);
            LleParams params = embed_lle.params();
            params.embed.lanczos.seed = seed;
            const Embedding e = run_lle(cloud, params);
            write_embedding_csv(embed_out, e);
            EmbeddingProvenance prov;
            prov.k = static_cast<std::uint32_t>(params.k);
            prov.d = static_cast<std::uint32_t>(params.d);
            prov.points = static_cast<std::uint64_t>(cloud.size());
            prov.lambda = params.lambda;
            prov.reg_tol = params.reg_tol;
            write_provenance(embed_prov.empty() ? fs::path(embed_out.string() + ".prov") : embed_prov, prov);
        } else if (*quant_cmd) {
            const RasterImage image = load_image(q_in);
            guard_size(image.pixel_count(), max_points);
            const auto [cloud, layout] = image_to_cloud(image);

            LlecParams params;
            params.lle = q_lle.params();
            params.lle.embed.lanczos.seed = seed;
            params.segment.eps1 = eps1.value_or(eps);
            params.segment.eps2 = eps2.value_or(eps);
            params.segment.eps_ball = eps_ball;
            params.segment.m = m;
            params.segment.strategy.kind = kStrategies.at(strategy);
            params.segment.strategy.b = b;
            params.segment.strategy.seed = seed;

            const Clustering clustering = llec_cluster(cloud, params);
            const RasterImage rec = cloud_to_image(reconstruct(cloud, clustering), layout);
            write_image(q_out, rec);
            if (!q_palette.empty())
                write_palette(q_palette, make_palette(clustering));
            if (!q_assign.empty())
                write_labels_csv(q_assign, clustering.assignment, layout.width);
            if (!q_means.empty()) {
                Eigen::MatrixXd means(clustering.clusters.front().embedding_mean.size(), clustering.size());
                for (Index j = 0; j < clustering.size(); ++j)
                    means.col(j) = clustering.clusters[j].embedding_mean;
                write_cloud_csv(q_means, PointCloud(means));
            }
            const std::string report = format_report(quality_report(image, rec, clustering.size()));
            if (q_report.empty())
                out << report;
            else
                write_text(q_report, report);
        } else if (*seg_cmd) {
            const PointCloud emb = load_cloud(s_emb);
            ImageLayout layout{};
            const PointCloud colors = load_cloud(s_colors, &layout);
            SegmentParams params;
            params.eps1 = s_eps1.value_or(s_eps);
            params.eps2 = s_eps2.value_or(s_eps);
            params.eps_ball = s_eps_ball;
            params.m = s_m;
            params.strategy.kind = kStrategies.at(s_strategy);
            params.strategy.b = s_b;
            params.strategy.seed = seed;
            const Clustering clustering = segment(emb.data(), colors, params);
            write_palette(s_palette, make_palette(clustering));
            if (!s_assign.empty())
                write_labels_csv(s_assign, clustering.assignment, layout.width > 0 ? layout.width : 1);
            out << "clusters: " << clustering.size() << '\n';
        } else if (*lbg_cmd) {
            const RasterImage image = load_image(l_in);
            const auto [cloud, layout] = image_to_cloud(image);
            Initializer initializer;
            initializer.kind = kInits.at(init);
            initializer.n = n_centers;
            initializer.seed = seed;
            if (initializer.kind == InitKind::LlecPalette) {
                if (l_palette_in.empty())
                    throw std::runtime_error("--init llec-palette needs --palette");
                initializer.colors = codebook_from_palette(read_palette(l_palette_in)).centers;
            } else if (initializer.kind == InitKind::HandIdentified && !l_hand.empty()) {
                initializer.colors = read_color_table(l_hand);
            }
            LbgOptions options;
            options.max_iters = max_iters;
            options.stop_tol = stop_tol;
            options.empty_region = reseed_empty ? EmptyRegionPolicy::ReseedFarthest : EmptyRegionPolicy::KeepCenter;
            const LbgResult result = lbg(cloud, init_centers(cloud, initializer), options);

            const RasterImage rec = cloud_to_image(quantize(cloud, result.codebook, result.assignment), layout);
            write_image(l_out, rec);
            if (!l_codebook.empty())
                write_palette(l_codebook, make_palette(result.codebook, result.assignment));
            if (!l_history.empty())
                write_history_csv(l_history, result.history);
            if (!l_assign.empty())
                write_labels_csv(l_assign, result.assignment, layout.width);
            const std::string report = format_report(quality_report(image, rec, result.codebook.size()));
            if (l_report.empty())
                out << report;
            else
                write_text(l_report, report);
        } else if (*synth_cmd) {
            if (*torus_cmd) {
                tspec.seed = seed;
                write_cloud_csv(t_out, torus_dataset(tspec));
            } else if (*lines_cmd) {
                lspec.seed = seed;
                const LineCloud lc = line_cloud(lspec);
                write_cloud_csv(ln_colors, lc.colors);
                write_cloud_csv(ln_pos, lc.positions);
                if (!ln_labels.empty())
                    write_labels_csv(ln_labels, lc.labels);
            } else if (*image_cmd) {
                ispec.seed = seed;
                const RegionImage ri = region_image(ispec);
                write_image(im_out, ri.image);
                if (!im_labels.empty())
                    write_labels_csv(im_labels, ri.labels, ispec.width);
            }
        } else if (*report_cmd) {
            const RasterImage a = load_image(r_orig);
            const RasterImage q = load_image(r_quant);
            const Index count = r_clusters > 0 ? r_clusters : unique_colors(q);
            const std::string report = format_report(quality_report(a, q, count));
            if (r_out.empty())
                out << report;
            else
                write_text(r_out, report);
        }
    } catch (const std::exception& e) {
        err << "llec: error: " << e.what() << '\n';
        return 1;
    }
    return 0;
}

} // namespace llec::cli
