#pragma once

// Shared helpers for the test binaries: independent oracles, file and
// process utilities. Everything here deliberately reimplements simulator
// logic from the definitions instead of calling into swarm_core, so tests
// cross-check two code paths.

#include <array>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include <sys/wait.h>
#include <unistd.h>

#include <boost/multiprecision/cpp_int.hpp>

#include "swarm/behavior.hpp"
#include "swarm/field.hpp"

namespace testsupport {

namespace fs = std::filesystem;
using Rational = boost::multiprecision::cpp_rational;

// ---------------------------------------------------------------------
// field helpers

inline void fill_random(swarm::CanvasField& field, std::mt19937_64& gen,
                        double hi) {
    std::uniform_real_distribution<double> dist(0.0, hi);
    std::vector<double> values(field.values().begin(), field.values().end());
    for (double& v : values) v = dist(gen);
    field.load_values(values);
}

// ---------------------------------------------------------------------
// dense transition-matrix diffusion oracle
//
// Builds the (W*H) x (W*H) one-step matrix explicitly from the kernel
// definition: a cell keeps (1 - lambda) plus lambda/4 per off-canvas
// direction under Bounded, and sends lambda/4 along each resolved von
// Neumann direction. Applies it per channel with its own indexing.

inline std::vector<double> diffuse_matrix_oracle(const swarm::CanvasField& field,
                                                 double lambda) {
    const int w = static_cast<int>(field.width());
    const int h = static_cast<int>(field.height());
    const size_t n = static_cast<size_t>(w) * h;
    const bool wrap = field.boundary() == swarm::Boundary::Toroidal;
    std::vector<double> matrix(n * n, 0.0);
    const double share = lambda / 4.0;

    const int dx[4] = {0, 1, 0, -1};
    const int dy[4] = {-1, 0, 1, 0};
    for (int y = 0; y < h; ++y) {
        for (int x = 0; x < w; ++x) {
            const size_t src = static_cast<size_t>(y) * w + x;
            matrix[src * n + src] += 1.0 - lambda;
            for (int d = 0; d < 4; ++d) {
                int tx = x + dx[d];
                int ty = y + dy[d];
                if (wrap) {
                    tx = (tx + w) % w;
                    ty = (ty + h) % h;
                } else if (tx < 0 || tx >= w || ty < 0 || ty >= h) {
                    matrix[src * n + src] += share;  // reflected
                    continue;
                }
                const size_t dst = static_cast<size_t>(ty) * w + tx;
                matrix[dst * n + src] += share;
            }
        }
    }

    const uint16_t channels = field.channels();
    std::vector<double> out(n * channels, 0.0);
    for (uint16_t c = 0; c < channels; ++c) {
        for (size_t dst = 0; dst < n; ++dst) {
            double acc = 0.0;
            for (size_t src = 0; src < n; ++src) {
                const double weight = matrix[dst * n + src];
                if (weight == 0.0) continue;
                const auto sx = static_cast<uint32_t>(src % w);
                const auto sy = static_cast<uint32_t>(src / w);
                acc += weight * field.at(sx, sy, c);
            }
            out[dst * channels + c] = acc;
        }
    }
    return out;  // indexed (y*w + x)*channels + c
}

// ---------------------------------------------------------------------
// exact-rational movement oracle
//
// Recomputes movement_distribution from its definition with arbitrary-
// precision rationals. Requires an integer beta so every weight stays
// rational. The grid is a rational copy the caller filled with values that
// are exact in double (dyadic), so both code paths see identical inputs.

struct RationalGrid {
    int width = 0;
    int height = 0;
    int channels = 0;
    bool wrap = false;
    std::vector<Rational> values;  // (y*width + x)*channels + c

    Rational& at(int x, int y, int c) {
        return values[(static_cast<size_t>(y) * width + x) * channels + c];
    }
    const Rational& at(int x, int y, int c) const {
        return values[(static_cast<size_t>(y) * width + x) * channels + c];
    }
};

struct RationalMoveParams {
    Rational delta;
    unsigned beta = 0;  // integer exponent keeps weights rational
    Rational w_own;
    Rational w_other;
    std::array<Rational, 5> inertia;
};

struct RationalMoveResult {
    std::array<Rational, 8> prob{};
    std::array<bool, 8> valid{};
    int valid_count = 0;
};

inline RationalMoveResult movement_rational_oracle(const RationalGrid& grid,
                                                   int ax, int ay, int heading,
                                                   int own_channel,
                                                   const RationalMoveParams& p) {
    // compass order N, NE, E, SE, S, SW, W, NW; y grows downward
    const int dx[8] = {0, 1, 1, 1, 0, -1, -1, -1};
    const int dy[8] = {-1, -1, 0, 1, 1, 1, 0, -1};

    auto resolve = [&grid](int x, int y) -> std::optional<std::pair<int, int>> {
        if (grid.wrap) {
            x = ((x % grid.width) + grid.width) % grid.width;
            y = ((y % grid.height) + grid.height) % grid.height;
            return std::pair{x, y};
        }
        if (x < 0 || x >= grid.width || y < 0 || y >= grid.height) {
            return std::nullopt;
        }
        return std::pair{x, y};
    };

    auto sense = [&](int x, int y) {
        std::vector<Rational> mean(grid.channels, Rational(0));
        int count = 0;
        for (int oy = -1; oy <= 1; ++oy) {
            for (int ox = -1; ox <= 1; ++ox) {
                const auto cell = resolve(x + ox, y + oy);
                if (!cell) continue;
                ++count;
                for (int c = 0; c < grid.channels; ++c) {
                    mean[c] += grid.at(cell->first, cell->second, c);
                }
            }
        }
        for (Rational& m : mean) m /= count;
        return mean;
    };

    RationalMoveResult out;
    std::array<Rational, 8> mass{};
    Rational total(0);
    for (int d = 0; d < 8; ++d) {
        const auto target = resolve(ax + dx[d], ay + dy[d]);
        if (!target) continue;
        out.valid[d] = true;
        ++out.valid_count;

        const auto stimulus = sense(target->first, target->second);
        Rational others(0);
        for (int c = 0; c < grid.channels; ++c) {
            if (c != own_channel) others += stimulus[c];
        }
        Rational sigma = p.w_own * stimulus[own_channel] + p.w_other * others;
        if (sigma < 0) sigma = 0;

        const Rational base = 1 + sigma / (1 + p.delta * sigma);
        Rational weight(1);
        for (unsigned i = 0; i < p.beta; ++i) weight *= base;

        int diff = d - heading;
        if (diff < 0) diff = -diff;
        if (diff > 4) diff = 8 - diff;
        mass[d] = weight * p.inertia[diff];
        total += mass[d];
    }
    if (out.valid_count == 0) return out;
    if (total == 0) {
        const Rational uniform = Rational(1) / out.valid_count;
        for (int d = 0; d < 8; ++d) {
            if (out.valid[d]) out.prob[d] = uniform;
        }
        return out;
    }
    for (int d = 0; d < 8; ++d) out.prob[d] = mass[d] / total;
    return out;
}

// ---------------------------------------------------------------------
// brute-force local similarity oracle

inline double similarity_brute_oracle(const swarm::CanvasField& field) {
    const int w = static_cast<int>(field.width());
    const int h = static_cast<int>(field.height());
    const int channels = field.channels();
    const bool wrap = field.boundary() == swarm::Boundary::Toroidal;

    auto mass_at = [&](int x, int y) {
        double s = 0.0;
        for (int c = 0; c < channels; ++c) {
            s += field.at(static_cast<uint32_t>(x), static_cast<uint32_t>(y),
                          static_cast<uint16_t>(c));
        }
        return s;
    };

    double total = 0.0;
    size_t painted = 0;
    for (int y = 0; y < h; ++y) {
        for (int x = 0; x < w; ++x) {
            if (mass_at(x, y) <= 0.0) continue;
            ++painted;
            std::vector<double> mean(channels, 0.0);
            int used = 0;
            for (int dy = -1; dy <= 1; ++dy) {
                for (int dx = -1; dx <= 1; ++dx) {
                    if (dx == 0 && dy == 0) continue;
                    int nx = x + dx;
                    int ny = y + dy;
                    if (wrap) {
                        nx = ((nx % w) + w) % w;
                        ny = ((ny % h) + h) % h;
                    } else if (nx < 0 || nx >= w || ny < 0 || ny >= h) {
                        continue;
                    }
                    if (mass_at(nx, ny) <= 0.0) continue;
                    ++used;
                    for (int c = 0; c < channels; ++c) {
                        mean[c] += field.at(static_cast<uint32_t>(nx),
                                            static_cast<uint32_t>(ny),
                                            static_cast<uint16_t>(c));
                    }
                }
            }
            if (used == 0) continue;
            double dot = 0.0;
            double nu = 0.0;
            double nm = 0.0;
            for (int c = 0; c < channels; ++c) {
                const double u = field.at(static_cast<uint32_t>(x),
                                          static_cast<uint32_t>(y),
                                          static_cast<uint16_t>(c));
                const double m = mean[c] / used;
                dot += u * m;
                nu += u * u;
                nm += m * m;
            }
            total += dot / std::sqrt(nu * nm);
        }
    }
    return total / static_cast<double>(painted);
}

// ---------------------------------------------------------------------
// strict PPM reader

struct PpmImage {
    int width = 0;
    int height = 0;
    int maxval = 0;
    std::vector<uint8_t> pixels;
};

// Parses binary P6 with standard whitespace/comment handling; returns
// nullopt on any malformation, including short or trailing payload.
inline std::optional<PpmImage> parse_ppm(const std::vector<std::byte>& bytes) {
    size_t pos = 0;
    auto peek = [&]() -> int {
        return pos < bytes.size() ? static_cast<int>(bytes[pos]) : -1;
    };
    auto is_space = [](int c) {
        return c == ' ' || c == '\t' || c == '\n' || c == '\r' || c == '\v' ||
               c == '\f';
    };
    auto skip_space = [&]() {
        while (true) {
            while (is_space(peek())) ++pos;
            if (peek() == '#') {
                while (peek() != '\n' && peek() != -1) ++pos;
                continue;
            }
            break;
        }
    };
    auto read_int = [&]() -> std::optional<int> {
        skip_space();
        if (peek() < '0' || peek() > '9') return std::nullopt;
        long v = 0;
        while (peek() >= '0' && peek() <= '9') {
            v = v * 10 + (peek() - '0');
            if (v > 1'000'000'000) return std::nullopt;
            ++pos;
        }
        return static_cast<int>(v);
    };

    if (bytes.size() < 2 || static_cast<char>(bytes[0]) != 'P' ||
        static_cast<char>(bytes[1]) != '6') {
        return std::nullopt;
    }
    pos = 2;
    const auto width = read_int();
    const auto height = read_int();
    const auto maxval = read_int();
    if (!width || !height || !maxval) return std::nullopt;
    if (*width < 1 || *height < 1 || *maxval < 1 || *maxval > 255) {
        return std::nullopt;
    }
    if (!is_space(peek())) return std::nullopt;
    ++pos;  // exactly one whitespace byte before the payload

    const size_t expected = static_cast<size_t>(*width) * *height * 3;
    if (bytes.size() - pos != expected) return std::nullopt;

    PpmImage image;
    image.width = *width;
    image.height = *height;
    image.maxval = *maxval;
    image.pixels.reserve(expected);
    for (; pos < bytes.size(); ++pos) {
        image.pixels.push_back(static_cast<uint8_t>(bytes[pos]));
    }
    return image;
}

// ---------------------------------------------------------------------
// file and process utilities

inline std::vector<std::byte> read_file_bytes(const fs::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot read " + path.string());
    std::vector<char> raw((std::istreambuf_iterator<char>(in)),
                          std::istreambuf_iterator<char>());
    const auto* data = reinterpret_cast<const std::byte*>(raw.data());
    return std::vector<std::byte>(data, data + raw.size());
}

inline std::string read_file_text(const fs::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot read " + path.string());
    return std::string((std::istreambuf_iterator<char>(in)),
                       std::istreambuf_iterator<char>());
}

inline void write_file_text(const fs::path& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    out << text;
    if (!out) throw std::runtime_error("cannot write " + path.string());
}

inline bool files_equal(const fs::path& a, const fs::path& b) {
    return read_file_bytes(a) == read_file_bytes(b);
}

class TempDir {
public:
    TempDir() {
        static int counter = 0;
        path_ = fs::temp_directory_path() /
                ("swarmtest-" + std::to_string(::getpid()) + "-" +
                 std::to_string(counter++));
        fs::create_directories(path_);
    }
    ~TempDir() {
        std::error_code ec;
        fs::remove_all(path_, ec);
    }
    TempDir(const TempDir&) = delete;
    TempDir& operator=(const TempDir&) = delete;
    const fs::path& path() const { return path_; }

private:
    fs::path path_;
};

struct CliResult {
    int exit_code = -1;
    std::string out;
    std::string err;
};

#ifdef SWARM_CLI_PATH
// Runs the simulator binary (compile definition SWARM_CLI_PATH) with the
// given argument string, capturing both streams.
inline CliResult run_cli(const std::string& args, const fs::path& work_dir) {
    const fs::path out_file = work_dir / "stdout.txt";
    const fs::path err_file = work_dir / "stderr.txt";
    const std::string cmd = std::string("\"") + SWARM_CLI_PATH + "\" " + args +
                            " > " + out_file.string() + " 2> " +
                            err_file.string();
    const int status = std::system(cmd.c_str());
    CliResult result;
    if (WIFEXITED(status)) result.exit_code = WEXITSTATUS(status);
    result.out = read_file_text(out_file);
    result.err = read_file_text(err_file);
    return result;
}
#endif

}  // namespace testsupport
