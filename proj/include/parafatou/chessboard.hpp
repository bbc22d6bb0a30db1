#pragma once

// Chessboard classification and deterministic rasterization.
//
// Dynamical: pull the horizontal line through v' = Phi_attr(v) back by the
// attracting coordinate. A basin point is yellow when Im(Phi - v') > 0, blue
// otherwise, and light when floor(Re(Phi - v')) is even. Applying f keeps the
// color and flips the shade.
//
// Structural: the same rule applied to the horn value H = h(zeta) with
// zeta = E^{-1}(w) taken on the principal branch. Status and color do not
// depend on the branch; the shade parity flips under zeta -> zeta + 1.
//
// Points on the graph itself (|Im| < 1e-12) count as yellow; measure-zero
// tie-break so that rasters are total functions.

#include <cmath>
#include <complex>
#include <cstdlib>
#include <fstream>
#include <stdexcept>
#include <string>
#include <thread>
#include <vector>

#include "parafatou/complexfn.hpp"
#include "parafatou/fatou.hpp"
#include "parafatou/horn.hpp"
#include "parafatou/maps.hpp"

namespace parafatou {

enum class PixelStatus : unsigned char { box, escape, undecided };

struct CellClass {
    PixelStatus status = PixelStatus::undecided;
    bool yellow = false;  // meaningful only when status == box
    bool light = false;
};

inline CellClass classify_rel(Cplx rel) {
    CellClass c;
    c.status = PixelStatus::box;
    c.yellow = rel.imag() > -1e-12;
    long long strip = (long long)std::floor(rel.real());
    c.light = strip % 2 == 0;
    return c;
}

inline CellClass classify_dynamical(const HornContext& ctx, Cplx z,
                                    long max_iter = 20'000, double tol = 1e-6) {
    FatouValue phi = phi_attr_extended(ctx.map, z, max_iter, tol);
    if (phi.status == Status::ok) return classify_rel(phi.value - ctx.v_prime);
    CellClass c;
    c.status = phi.status == Status::escaped ? PixelStatus::escape : PixelStatus::undecided;
    return c;
}

// Classification upstairs on the cylinder; exposed so the translation
// covariance (same status and color, flipped shade) is testable directly.
inline CellClass classify_structural_zeta(const HornContext& ctx, Cplx zeta,
                                          long max_iter = 20'000, double tol = 1e-6) {
    FatouValue h = horn_eval(ctx, zeta, max_iter, tol);
    if (h.status == Status::ok) return classify_rel(h.value - ctx.v_prime);
    CellClass c;
    c.status = h.status == Status::not_in_domain ? PixelStatus::escape
                                                 : PixelStatus::undecided;
    return c;
}

inline CellClass classify_structural(const HornContext& ctx, Cplx w,
                                     long max_iter = 20'000, double tol = 1e-6) {
    if (w == Cplx(0.0)) {
        // Limit through the droplet around the origin: Im(h) -> +inf.
        CellClass c;
        c.status = PixelStatus::box;
        c.yellow = true;
        c.light = true;
        return c;
    }
    if (!is_finite(w)) {
        CellClass c;
        c.status = PixelStatus::escape;
        return c;
    }
    Cplx zeta = log_p(w) / Cplx(0.0, 2.0 * pf_pi);
    return classify_structural_zeta(ctx, zeta, max_iter, tol);
}

struct Rgb {
    unsigned char r = 0, g = 0, b = 0;
};

namespace palette {
inline constexpr Rgb light_yellow{255, 244, 150};
inline constexpr Rgb dark_yellow{226, 180, 0};
inline constexpr Rgb light_blue{150, 200, 255};
inline constexpr Rgb dark_blue{10, 80, 170};
inline constexpr Rgb escape{0, 0, 0};
inline constexpr Rgb undecided{128, 128, 128};
}  // namespace palette

inline Rgb cell_rgb(CellClass c) {
    switch (c.status) {
        case PixelStatus::escape: return palette::escape;
        case PixelStatus::undecided: return palette::undecided;
        case PixelStatus::box: break;
    }
    if (c.yellow) return c.light ? palette::light_yellow : palette::dark_yellow;
    return c.light ? palette::light_blue : palette::dark_blue;
}

enum class RasterMode { dynamical, structural };

struct RasterJob {
    ParabolicMap map;
    RasterMode mode = RasterMode::dynamical;
    Cplx center{0.0, 0.0};
    double width = 2.0;
    double height = 0.0;  // <= 0: square pixels, width * ny / nx
    int nx = 512, ny = 512;
    long budget = 20'000;  // per-orbit iteration cap for each pixel
    double tol = 1e-6;
    int threads = 0;  // 0: PARAFATOU_THREADS env, then hardware_concurrency
};

struct ChessboardImage {
    int nx = 0, ny = 0;
    std::vector<CellClass> cells;       // row-major, row 0 at the top
    std::vector<unsigned char> rgb;     // 3 bytes per pixel, same order
};

inline int resolve_workers(int requested) {
    int t = requested;
    if (t <= 0) {
        if (const char* env = std::getenv("PARAFATOU_THREADS")) {
            int v = std::atoi(env);
            if (v > 0) t = v;
        }
    }
    if (t <= 0) t = (int)std::thread::hardware_concurrency();
    return t > 0 ? t : 1;
}

// Deterministic by construction: every pixel is a pure function of the job,
// rows are written by exactly one worker, and the worker count only changes
// the row interleaving, never the values.
inline ChessboardImage render(const RasterJob& job) {
    if (job.nx < 1 || job.ny < 1 || (long long)job.nx * job.ny > 100'000'000)
        throw std::invalid_argument("render: resolution out of range");
    if (!(job.width > 0.0) || !is_finite(job.center))
        throw std::invalid_argument("render: window must have positive width");
    if (job.budget < 1) throw std::invalid_argument("render: budget must be positive");
    double height = job.height > 0.0 ? job.height : job.width * (double)job.ny / job.nx;

    // Force all lazy shared state before spawning workers.
    HornContext ctx = make_horn_context(job.map);

    ChessboardImage img;
    img.nx = job.nx;
    img.ny = job.ny;
    img.cells.resize((size_t)job.nx * job.ny);
    img.rgb.resize((size_t)job.nx * job.ny * 3);

    double x0 = job.center.real() - job.width / 2.0;
    double y1 = job.center.imag() + height / 2.0;
    double dx = job.width / job.nx;
    double dy = height / job.ny;

    int workers = resolve_workers(job.threads);
    if (workers > job.ny) workers = job.ny;

    auto run_rows = [&](int first) {
        for (int k = first; k < job.ny; k += workers) {
            for (int j = 0; j < job.nx; ++j) {
                Cplx p(x0 + (j + 0.5) * dx, y1 - (k + 0.5) * dy);
                CellClass c;
                try {
                    c = job.mode == RasterMode::dynamical
                            ? classify_dynamical(ctx, p, job.budget, job.tol)
                            : classify_structural(ctx, p, job.budget, job.tol);
                } catch (...) {
                    c.status = PixelStatus::undecided;  // never abort the image
                }
                size_t idx = (size_t)k * job.nx + j;
                img.cells[idx] = c;
                Rgb col = cell_rgb(c);
                img.rgb[3 * idx] = col.r;
                img.rgb[3 * idx + 1] = col.g;
                img.rgb[3 * idx + 2] = col.b;
            }
        }
    };

    if (workers == 1) {
        run_rows(0);
    } else {
        std::vector<std::thread> pool;
        pool.reserve(workers);
        for (int t = 0; t < workers; ++t) pool.emplace_back(run_rows, t);
        for (auto& th : pool) th.join();
    }
    return img;
}

inline std::string serialize_ppm(const ChessboardImage& img) {
    std::string out = "P6\n" + std::to_string(img.nx) + " " + std::to_string(img.ny) + "\n255\n";
    out.append((const char*)img.rgb.data(), img.rgb.size());
    return out;
}

inline void write_ppm(const ChessboardImage& img, const std::string& path) {
    std::ofstream f(path, std::ios::binary);
    if (!f) throw std::runtime_error("write_ppm: cannot open " + path);
    std::string bytes = serialize_ppm(img);
    f.write(bytes.data(), (std::streamsize)bytes.size());
    if (!f) throw std::runtime_error("write_ppm: short write to " + path);
}

}  // namespace parafatou
