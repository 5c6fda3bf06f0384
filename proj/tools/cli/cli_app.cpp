#include "cli_app.hpp"

#include "clickfill/codec.hpp"
#include "clickfill/error.hpp"
#include "clickfill/mask_ops.hpp"
#include "clickfill/pipeline.hpp"
#include "clickfill/remote_backends.hpp"

#include "wire.hpp"

#include "CLI11.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <iostream>
#include <optional>

namespace clickfill::cli {

namespace {

struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct RunOptions {
    std::string input;
    std::string mode;
    std::vector<std::string> points;
    std::vector<std::string> neg_points;
    std::string prompt;
    std::string mask_in;
    std::optional<int> dilate_radius;
    int open_radius = 0;
    std::uint64_t seed = 0;
    std::string backend = "mock";
    std::string remote_url;
    std::string output;
    std::string mask_out;
    bool json = false;
    std::string report;
    int working_resolution = 512;
};

struct CompareOptions {
    std::string a;
    std::string b;
    std::string mask;
    std::string region = "inside";
};

ClickPoint parse_point(const std::string& text, PointLabel label) {
    const auto comma = text.find(',');
    if (comma == std::string::npos) throw UsageError("point '" + text + "' must look like x,y");
    auto parse_int = [&](std::string_view part) {
        int v = 0;
        const auto [ptr, ec] = std::from_chars(part.data(), part.data() + part.size(), v);
        if (ec != std::errc() || ptr != part.data() + part.size()) {
            throw UsageError("point '" + text + "' must look like x,y");
        }
        return v;
    };
    const std::string_view sv(text);
    return {parse_int(sv.substr(0, comma)), parse_int(sv.substr(comma + 1)), label};
}

int do_run(const RunOptions& o, std::ostream& out, std::ostream& err) {
    Mode mode;
    try {
        mode = parse_mode(o.mode);
    } catch (const Error&) {
        throw UsageError("--mode must be remove, fill or replace");
    }
    if (mode != Mode::Remove && o.prompt.empty()) throw UsageError("--prompt is required for " + o.mode);
    if (o.points.empty() && o.mask_in.empty()) throw UsageError("give at least one --point or a --mask-in");
    if (mode == Mode::Replace && o.dilate_radius) throw UsageError("--dilate-radius does not apply to replace");
    if (o.backend != "mock" && o.backend != "remote") throw UsageError("--backend must be mock or remote");
    if (o.backend == "remote" && o.remote_url.empty()) throw UsageError("--backend remote needs --remote-url");

    ClickPrompt clicks;
    for (const auto& p : o.points) clicks.points.push_back(parse_point(p, PointLabel::Positive));
    for (const auto& p : o.neg_points) clicks.points.push_back(parse_point(p, PointLabel::Negative));

    PipelineConfig config;
    config.mode = mode;
    config.open_radius = o.open_radius;
    config.dilate_radius_override = o.dilate_radius;
    config.seed = o.seed;
    config.working_resolution = o.working_resolution;

    BackendRegistry registry = BackendRegistry::with_mocks();
    if (o.backend == "remote") {
        add_remote_backends(registry, RemoteEndpoint{o.remote_url});
        config.segmenter = config.inpainter = config.generator = "remote";
    }

    wire::json report;
    try {
        config.validate();
        const Image image = load_image(o.input);
        const Pipeline pipeline(registry.resolve(config));

        PipelineResult result = [&] {
            if (!o.mask_in.empty()) {
                return pipeline.run(mode, image, decode_mask_png(read_file(o.mask_in)), o.prompt, config);
            }
            switch (mode) {
            case Mode::Fill: return pipeline.fill_anything(image, clicks, o.prompt, config);
            case Mode::Replace: return pipeline.replace_anything(image, clicks, o.prompt, config);
            case Mode::Remove: break;
            }
            return pipeline.remove_anything(image, clicks, config);
        }();

        save_image(o.output, result.output);
        if (!o.mask_out.empty()) write_file(o.mask_out, encode_mask_png(result.edit_mask));

        report = {{"status", "ok"},
                  {"mode", to_string(mode)},
                  {"input", {{"path", o.input}, {"width", image.width()}, {"height", image.height()}}},
                  {"output", o.output},
                  {"config", wire::config_to_json(config)},
                  {"object_area", result.object_mask.count()},
                  {"mask_area", result.edit_mask.count()},
                  {"window", wire::window_to_json(result.window)},
                  {"timings", wire::timings_to_json(result.timings)}};
        if (!o.prompt.empty()) report["prompt"] = o.prompt;
    } catch (const Error& e) {
        err << "error: " << e.what() << "\n";
        if (o.json) out << wire::json{{"status", "error"}, {"error", e.name()}, {"message", e.what()}}.dump() << "\n";
        return kPipeline;
    }

    if (o.json) out << report.dump(2) << "\n";
    if (!o.report.empty()) {
        std::ofstream f(o.report);
        f << report.dump(2) << "\n";
    }
    return kOk;
}

int do_compare(const CompareOptions& o, std::ostream& out, std::ostream& err) {
    if (o.region != "inside" && o.region != "outside") throw UsageError("--region must be inside or outside");
    const Image a = load_image(o.a);
    const Image b = load_image(o.b);
    const Mask mask = decode_mask_png(read_file(o.mask));
    if (a.extent() != b.extent() || a.extent() != mask.extent()) {
        err << "error: DimensionMismatch: " << a.width() << "x" << a.height() << ", " << b.width() << "x"
            << b.height() << ", mask " << mask.width() << "x" << mask.height() << "\n";
        return kUsage;
    }
    const bool want = o.region == "inside";
    for (int y = 0; y < a.height(); ++y) {
        for (int x = 0; x < a.width(); ++x) {
            if (mask.at(x, y) != want) continue;
            const Rgb pa = a.at(x, y);
            const Rgb pb = b.at(x, y);
            if (pa != pb) {
                out << "differs at (" << x << ", " << y << "): a=(" << int(pa[0]) << "," << int(pa[1]) << ","
                    << int(pa[2]) << ") b=(" << int(pb[0]) << "," << int(pb[1]) << "," << int(pb[2]) << ")\n";
                return kDiffers;
            }
        }
    }
    out << "identical over " << o.region << " region\n";
    return kOk;
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"click-driven remove / fill / replace editing"};
    app.require_subcommand(1);

    RunOptions run;
    auto* run_cmd = app.add_subcommand("run", "run one pipeline mode over an image");
    run_cmd->add_option("--input", run.input, "input PNG or JPEG")->required();
    run_cmd->add_option("--mode", run.mode, "remove | fill | replace")->required();
    run_cmd->add_option("--point", run.points, "positive click as x,y (repeatable)");
    run_cmd->add_option("--neg-point", run.neg_points, "negative click as x,y (repeatable)");
    run_cmd->add_option("--prompt", run.prompt, "text prompt for fill / replace");
    run_cmd->add_option("--mask-in", run.mask_in, "object mask PNG (0/255), skips segmentation");
    run_cmd->add_option("--dilate-radius", run.dilate_radius, "override the mode's dilation radius")->check(CLI::NonNegativeNumber);
    run_cmd->add_option("--open-radius", run.open_radius, "opening radius for mask cleanup")->check(CLI::NonNegativeNumber);
    run_cmd->add_option("--seed", run.seed, "generator seed");
    run_cmd->add_option("--backend", run.backend, "mock | remote");
    run_cmd->add_option("--remote-url", run.remote_url, "backend worker base URL for --backend remote");
    run_cmd->add_option("--working-resolution", run.working_resolution, "backend working size (multiple of 8)");
    run_cmd->add_option("--output", run.output, "output image path (.png / .jpg)")->required();
    run_cmd->add_option("--mask-out", run.mask_out, "write the final edit mask PNG here");
    run_cmd->add_flag("--json", run.json, "print a JSON run report to stdout");
    run_cmd->add_option("--report", run.report, "write the JSON run report to this file");

    CompareOptions cmp;
    auto* cmp_cmd = app.add_subcommand("compare", "check two images for bit-identity over a mask region");
    cmp_cmd->add_option("--a", cmp.a)->required();
    cmp_cmd->add_option("--b", cmp.b)->required();
    cmp_cmd->add_option("--mask", cmp.mask, "mask PNG (0/255)")->required();
    cmp_cmd->add_option("--region", cmp.region, "inside | outside");

    try {
        std::vector<std::string> reversed(args.rbegin(), args.rend());
        app.parse(reversed);
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return kOk;
    } catch (const CLI::ParseError& e) {
        err << "usage error: " << e.what() << "\n";
        return kUsage;
    }

    try {
        if (run_cmd->parsed()) return do_run(run, out, err);
        return do_compare(cmp, out, err);
    } catch (const UsageError& e) {
        err << "usage error: " << e.what() << "\n";
        return kUsage;
    } catch (const Error& e) {
        err << "error: " << e.what() << "\n";
        return kPipeline;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << "\n";
        return kPipeline;
    }
}

}  // namespace clickfill::cli
