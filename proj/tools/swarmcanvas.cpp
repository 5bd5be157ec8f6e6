#include <cstdint>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "swarm/config.hpp"
#include "swarm/errors.hpp"
#include "swarm/image.hpp"
#include "swarm/metrics.hpp"
#include "swarm/snapshot.hpp"
#include "swarm/world.hpp"

namespace fs = std::filesystem;

namespace {

void write_text_file(const fs::path& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) {
        throw swarm::DataError("cannot open " + path.string() + " for writing");
    }
    out << text;
    if (!out) throw swarm::DataError("failed writing " + path.string());
}

void write_metrics_csv(const fs::path& path, uint16_t channels,
                       const std::vector<swarm::MetricsRecord>& series) {
    std::string text = swarm::metrics_header(channels);
    text += '\n';
    for (const auto& record : series) {
        text += swarm::metrics_row(record);
        text += '\n';
    }
    write_text_file(path, text);
}

std::string snapshot_name(uint64_t tick) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "snapshot_%08llu.swrm",
                  static_cast<unsigned long long>(tick));
    return buf;
}

swarm::TickObserver snapshot_observer(const fs::path& dir, uint64_t every) {
    if (every == 0) return {};
    return [dir, every](const swarm::WorldState& w) {
        if (w.tick % every == 0) {
            swarm::write_snapshot_file(w, dir / snapshot_name(w.tick));
        }
    };
}

const swarm::CanvasField& pick_layer(const swarm::WorldState& world,
                                     const std::string& layer) {
    if (layer == "live") return world.field;
    if (layer == "permanent") return world.permanent;
    return world.params.render_permanent ? world.permanent : world.field;
}

void write_outputs(const fs::path& dir, const swarm::WorldState& world,
                   const std::vector<swarm::MetricsRecord>& series) {
    swarm::write_snapshot_file(world, dir / "snapshot.swrm");
    const auto image =
        swarm::render_image(pick_layer(world, "auto"), world.params.palette);
    swarm::write_bytes_file(dir / "painting.ppm", image);
    write_metrics_csv(dir / "metrics.csv", world.params.channels, series);
}

int run_command(const std::string& config_path, const std::string& out_dir,
                uint64_t snapshot_every) {
    swarm::WorldState world =
        swarm::init_world(swarm::load_config_file(config_path));
    fs::create_directories(out_dir);
    const auto series = swarm::run_collecting_metrics(
        world, world.params.ticks, world.params.metrics_every,
        snapshot_observer(out_dir, snapshot_every));
    write_outputs(out_dir, world, series);
    return 0;
}

int resume_command(const std::string& snapshot_path, uint64_t ticks,
                   const std::string& out_dir, uint64_t snapshot_every) {
    swarm::WorldState world = swarm::read_snapshot_file(snapshot_path);
    world.params.ticks = world.tick + ticks;
    fs::create_directories(out_dir);
    const auto series = swarm::run_collecting_metrics(
        world, ticks, world.params.metrics_every,
        snapshot_observer(out_dir, snapshot_every));
    write_outputs(out_dir, world, series);
    return 0;
}

int render_command(const std::string& snapshot_path, const std::string& out_file,
                   const std::string& layer) {
    const swarm::WorldState world = swarm::read_snapshot_file(snapshot_path);
    const fs::path out_path(out_file);
    if (!out_path.parent_path().empty()) {
        fs::create_directories(out_path.parent_path());
    }
    swarm::write_bytes_file(
        out_path,
        swarm::render_image(pick_layer(world, layer), world.params.palette));
    return 0;
}

int metrics_command(const std::string& snapshot_path) {
    const swarm::WorldState world = swarm::read_snapshot_file(snapshot_path);
    std::cout << swarm::metrics_header(world.params.channels) << '\n'
              << swarm::metrics_row(swarm::sample_metrics(world)) << '\n';
    return 0;
}

int nullrun_command(const std::string& config_path, const std::string& out_dir) {
    const swarm::SimParams params = swarm::load_config_file(config_path);
    const swarm::NullComparison result = swarm::run_with_null(params);
    fs::create_directories(out_dir);
    write_outputs(out_dir, result.null_final, result.null_series);
    write_metrics_csv(fs::path(out_dir) / "coupled_metrics.csv",
                      params.channels, result.coupled_series);

    const auto draws = static_cast<double>(params.agent_count) *
                       static_cast<double>(params.ticks);
    uint64_t null_events = 0;
    for (uint64_t n : result.null_final.deposit_events) null_events += n;
    std::cout << "matched deposit rate: " << result.matched_rate << '\n'
              << "null realized rate: "
              << (draws > 0.0 ? static_cast<double>(null_events) / draws : 0.0)
              << '\n';
    return 0;
}

}  // namespace

int cli_main(int argc, char** argv) {
    CLI::App app{"deterministic stigmergic swarm painting simulator"};
    app.require_subcommand(1);

    std::string config_path;
    std::string snapshot_path;
    std::string out_path;
    std::string layer = "auto";
    uint64_t snapshot_every = 0;
    uint64_t resume_ticks = 0;

    CLI::App* run_cmd = app.add_subcommand(
        "run", "simulate a config; write snapshot, painting, and metrics");
    run_cmd->add_option("config", config_path, "config file")->required();
    run_cmd->add_option("--out", out_path, "output directory")->required();
    run_cmd->add_option("--snapshot-every", snapshot_every,
                        "also snapshot every N ticks");

    CLI::App* render_cmd =
        app.add_subcommand("render", "render a snapshot to a PPM image");
    render_cmd->add_option("snapshot", snapshot_path, "snapshot file")
        ->required();
    render_cmd->add_option("--out", out_path, "output image file")->required();
    render_cmd->add_option("--layer", layer, "layer to render")
        ->check(CLI::IsMember({"auto", "live", "permanent"}));

    CLI::App* metrics_cmd = app.add_subcommand(
        "metrics", "print the metrics row for a snapshot");
    metrics_cmd->add_option("snapshot", snapshot_path, "snapshot file")
        ->required();

    CLI::App* resume_cmd = app.add_subcommand(
        "resume", "continue a snapshotted run bit-exactly");
    resume_cmd->add_option("snapshot", snapshot_path, "snapshot file")
        ->required();
    resume_cmd->add_option("--ticks", resume_ticks, "ticks to append")
        ->required();
    resume_cmd->add_option("--out", out_path, "output directory")->required();
    resume_cmd->add_option("--snapshot-every", snapshot_every,
                           "also snapshot every N ticks");

    CLI::App* null_cmd = app.add_subcommand(
        "nullrun", "run a config and write its coupling-severed null model");
    null_cmd->add_option("config", config_path, "config file")->required();
    null_cmd->add_option("--out", out_path, "output directory")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0) return app.exit(e);  // --help and friends
        app.exit(e);
        return 1;
    }

    try {
        if (run_cmd->parsed()) {
            return run_command(config_path, out_path, snapshot_every);
        }
        if (render_cmd->parsed()) {
            return render_command(snapshot_path, out_path, layer);
        }
        if (metrics_cmd->parsed()) return metrics_command(snapshot_path);
        if (resume_cmd->parsed()) {
            return resume_command(snapshot_path, resume_ticks, out_path,
                                  snapshot_every);
        }
        if (null_cmd->parsed()) return nullrun_command(config_path, out_path);
        std::cerr << "no subcommand selected\n";
        return 1;
    } catch (const swarm::ConfigError& e) {
        std::cerr << "config error: " << e.what() << '\n';
        return 2;
    } catch (const swarm::DataError& e) {
        std::cerr << "data error: " << e.what() << '\n';
        return 3;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 3;
    }
}

int main(int argc, char** argv) { return cli_main(argc, argv); }
