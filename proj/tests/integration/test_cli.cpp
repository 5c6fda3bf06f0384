#include "cli_app.hpp"

#include "clickfill/codec.hpp"
#include "clickfill/service/service.hpp"

#include "fixtures.hpp"
#include "oracles.hpp"

#include "json.hpp"

#include <gtest/gtest.h>

#include <fstream>
#include <sstream>

using namespace clickfill;
using namespace clickfill::testing;
using json = nlohmann::json;

namespace {

struct CliRun {
    int code;
    std::string out;
    std::string err;
};

CliRun invoke(std::vector<std::string> args) {
    std::ostringstream out, err;
    const int code = cli::run_cli(args, out, err);
    return {code, out.str(), err.str()};
}

Image fixture() {
    Image img({160, 120}, Rgb{30, 140, 60});
    for (int y = 40; y < 70; ++y)
        for (int x = 50; x < 90; ++x) img.set(x, y, {240, 240, 20});
    return img;
}

class Cli : public ::testing::Test {
protected:
    void SetUp() override { save_image(in(), fixture()); }
    std::string in() const { return dir.file("in.png"); }
    TempDir dir;
};

}  // namespace

TEST_F(Cli, UsageErrorsExitTwo) {
    const std::string out = dir.file("o.png");
    EXPECT_EQ(invoke({"run", "--input", in(), "--mode", "fill", "--point", "60,50", "--output", out}).code, cli::kUsage);
    EXPECT_EQ(invoke({"run", "--input", in(), "--mode", "remove", "--output", out}).code, cli::kUsage);
    EXPECT_EQ(invoke({"run", "--input", in(), "--mode", "erase", "--point", "1,1", "--output", out}).code, cli::kUsage);
    EXPECT_EQ(invoke({"run", "--input", in(), "--mode", "remove", "--point", "1;1", "--output", out}).code, cli::kUsage);
    EXPECT_EQ(invoke({"run", "--input", in(), "--mode", "remove", "--point", "1,1", "--output", out, "--frobnicate"}).code,
              cli::kUsage);
    EXPECT_EQ(invoke({"run", "--input", in(), "--mode", "replace", "--prompt", "x", "--point", "60,50",
                   "--dilate-radius", "4", "--output", out})
                  .code,
              cli::kUsage);
    EXPECT_EQ(invoke({"run", "--input", in(), "--mode", "remove", "--point", "60,50", "--backend", "remote",
                   "--output", out})
                  .code,
              cli::kUsage);
    EXPECT_EQ(invoke({"run", "--mode", "remove", "--point", "1,1", "--output", out}).code, cli::kUsage);
    EXPECT_EQ(invoke({}).code, cli::kUsage);
    const auto r = invoke({"run", "--input", in(), "--mode", "fill", "--point", "60,50", "--output", out});
    EXPECT_NE(r.err.find("--prompt"), std::string::npos);
}

TEST_F(Cli, RemoveThenCompareOutsideIsIdentical) {
    const auto r = invoke({"run", "--input", in(), "--mode", "remove", "--point", "60,50", "--output", dir.file("o.png"),
                        "--mask-out", dir.file("m.png")});
    ASSERT_EQ(r.code, cli::kOk) << r.err;
    EXPECT_EQ(invoke({"compare", "--a", in(), "--b", dir.file("o.png"), "--mask", dir.file("m.png"), "--region", "outside"})
                  .code,
              cli::kOk);
    // Inside the mask the object is gone, so the images differ there.
    const auto inside = invoke({"compare", "--a", in(), "--b", dir.file("o.png"), "--mask", dir.file("m.png")});
    EXPECT_EQ(inside.code, cli::kDiffers);
    EXPECT_EQ(load_image(dir.file("o.png")), Image({160, 120}, Rgb{30, 140, 60}));
}

TEST_F(Cli, JsonReportSchema) {
    const auto r = invoke({"run", "--input", in(), "--mode", "fill", "--prompt", "dog", "--point", "60,50", "--seed", "5",
                        "--output", dir.file("o.png"), "--json", "--report", dir.file("r.json")});
    ASSERT_EQ(r.code, cli::kOk) << r.err;
    const json j = json::parse(r.out);
    for (const char* key : {"status", "mode", "input", "output", "config", "object_area", "mask_area", "window", "timings", "prompt"}) {
        EXPECT_TRUE(j.contains(key)) << key;
    }
    EXPECT_EQ(j["status"], "ok");
    EXPECT_EQ(j["mode"], "fill");
    EXPECT_EQ(j["object_area"], 40 * 30);
    EXPECT_EQ(j["config"]["seed"], 5);
    EXPECT_EQ(j["input"]["width"], 160);
    for (const char* stage : {"segment", "refine", "dilate", "crop", "extract", "backend", "composite"}) {
        EXPECT_TRUE(j["timings"].contains(stage)) << stage;
    }
    std::ifstream f(dir.file("r.json"));
    EXPECT_EQ(json::parse(f)["mask_area"], j["mask_area"]);
}

TEST_F(Cli, PipelineErrorsExitThree) {
    save_image(dir.file("mask_small.png"), Image({10, 10}, Rgb{255, 255, 255}));
    const auto bad_mask = invoke({"run", "--input", in(), "--mode", "remove", "--mask-in", dir.file("mask_small.png"),
                               "--output", dir.file("o.png")});
    EXPECT_EQ(bad_mask.code, cli::kPipeline);
    EXPECT_NE(bad_mask.err.find("BadMask"), std::string::npos);

    const auto oob = invoke({"run", "--input", in(), "--mode", "remove", "--point", "500,5", "--output", dir.file("o.png")});
    EXPECT_EQ(oob.code, cli::kPipeline);
    EXPECT_NE(oob.err.find("PointOutOfBounds"), std::string::npos);

    const auto none = invoke({"run", "--input", in(), "--mode", "remove", "--point", "60,50", "--neg-point", "61,51",
                           "--output", dir.file("o.png"), "--json"});
    EXPECT_EQ(none.code, cli::kPipeline);
    EXPECT_EQ(json::parse(none.out)["error"], "NoObjectFound");

    const auto missing = invoke({"run", "--input", dir.file("nope.png"), "--mode", "remove", "--point", "1,1", "--output",
                              dir.file("o.png")});
    EXPECT_EQ(missing.code, cli::kPipeline);
}

TEST_F(Cli, MaskInBypassesSegmentation) {
    Mask m({160, 120});
    for (int y = 40; y < 70; ++y)
        for (int x = 50; x < 90; ++x) m.set(x, y, true);
    write_file(dir.file("obj.png"), encode_mask_png(m));
    const auto r = invoke({"run", "--input", in(), "--mode", "replace", "--prompt", "crossroad in the city", "--mask-in",
                        dir.file("obj.png"), "--output", dir.file("o.png"), "--json"});
    ASSERT_EQ(r.code, cli::kOk) << r.err;
    const Image out = load_image(dir.file("o.png"));
    EXPECT_EQ(out.at(60, 50), fixture().at(60, 50));
    EXPECT_NE(out.at(5, 5), fixture().at(5, 5));
}

TEST_F(Cli, CompareDetectsSinglePixel) {
    Image b = fixture();
    b.set(70, 55, {0, 0, 0});
    save_image(dir.file("b.png"), b);
    write_file(dir.file("all.png"), encode_mask_png(Mask({160, 120}, true)));
    write_file(dir.file("none.png"), encode_mask_png(Mask({160, 120})));

    const auto diff = invoke({"compare", "--a", in(), "--b", dir.file("b.png"), "--mask", dir.file("all.png"), "--region", "inside"});
    EXPECT_EQ(diff.code, cli::kDiffers);
    EXPECT_NE(diff.out.find("(70, 55)"), std::string::npos) << diff.out;

    EXPECT_EQ(invoke({"compare", "--a", in(), "--b", dir.file("b.png"), "--mask", dir.file("none.png")}).code, cli::kOk);
    EXPECT_EQ(invoke({"compare", "--a", in(), "--b", in(), "--mask", dir.file("all.png")}).code, cli::kOk);

    save_image(dir.file("small.png"), Image({10, 10}));
    EXPECT_EQ(invoke({"compare", "--a", in(), "--b", dir.file("small.png"), "--mask", dir.file("all.png")}).code, cli::kUsage);
    EXPECT_EQ(invoke({"compare", "--a", in(), "--b", in(), "--mask", dir.file("all.png"), "--region", "both"}).code,
              cli::kUsage);
}

TEST_F(Cli, MatchesServiceBitForBit) {
    using namespace clickfill::service;
    ServiceCore core(ServiceConfig{}, BackendRegistry::with_mocks());
    const auto up = core.upload_image(read_file(in()));
    core.segment(up.session_id, ClickPrompt{{{60, 50, PointLabel::Positive}}});

    struct Case {
        Mode mode;
        std::string prompt;
    };
    for (const Case& c : {Case{Mode::Remove, ""}, Case{Mode::Fill, "a teddy bear on a bench"},
                          Case{Mode::Replace, "crossroad in the city"}}) {
        PipelineConfig config = core.default_config();
        config.seed = 7;
        ExecuteRequest req;
        req.mode = c.mode;
        req.mask_index = 0;
        req.prompt = c.prompt;
        req.config = config;
        const auto job = core.wait(core.execute(up.session_id, req), std::chrono::seconds(30));
        ASSERT_EQ(job.status, JobStatus::Done);

        std::vector<std::string> args{"run", "--input", in(), "--mode", std::string(to_string(c.mode)), "--point",
                                      "60,50", "--seed", "7", "--output", dir.file("cli.png")};
        if (!c.prompt.empty()) {
            args.push_back("--prompt");
            args.push_back(c.prompt);
        }
        ASSERT_EQ(invoke(args).code, cli::kOk);
        EXPECT_EQ(load_image(dir.file("cli.png")), job.result->output) << to_string(c.mode);
    }
}
