#include "support.hpp"

#include <gtest/gtest.h>

#include <cstdio>
#include <filesystem>

using namespace cutforge;
using io::json;

namespace {

std::string error_of(const std::function<void()>& f) {
    try {
        f();
    } catch (const InputError& e) {
        return e.what();
    }
    return "";
}

bool starts_with(const std::string& s, const std::string& p) { return s.rfind(p, 0) == 0; }

} // namespace

TEST(Io, InstanceFileRoundTrip) {
    for (const char* spec : {"linear:4", "square-diagonal:3", "exp:1"}) {
        Example ex = generate_example(spec);
        json j = io::to_json(ex.sequent, ex.instances);
        auto back = io::instance_file_from_json(json::parse(j.dump()));
        EXPECT_EQ(render(back.sequent), render(ex.sequent));
        EXPECT_EQ(extract_terms(back.sequent, back.instances), extract_terms(ex.sequent, ex.instances));
    }
}

TEST(Io, InstanceIndicesAreOneBased) {
    Example ex = generate_example("linear", 2);
    json j = io::to_json(ex.sequent, ex.instances);
    ASSERT_EQ(j["instances"].size(), 1u);
    EXPECT_EQ(j["instances"][0]["formula"], 2);
}

TEST(Io, GrammarRoundTrip) {
    Example ex = generate_example("exp", 2);
    for (const auto& g : minimal_grammars(extract_terms(ex.sequent, ex.instances), 3)) {
        json j = io::to_json(g);
        EXPECT_EQ(j["size"], g.size());
        EXPECT_EQ(io::grammar_from_json(json::parse(j.dump())), g);
    }
}

TEST(Io, EhsRoundTrip) {
    Example ex = generate_example("linear", 9);
    auto r = cut_intro(ex.sequent, ex.instances);
    ASSERT_TRUE(r.ehs);
    json j = io::to_json(*r.ehs);
    auto H = io::ehs_from_json(json::parse(j.dump()));
    EXPECT_EQ(H.shs.grammar, r.ehs->shs.grammar);
    EXPECT_EQ(H.solution, r.ehs->solution);
    EXPECT_TRUE(check_solution(H.shs, H.solution));
}

TEST(Io, ProofRoundTrip) {
    for (const char* spec : {"linear:9", "square-diagonal:4", "exp:2"}) {
        Example ex = generate_example(spec);
        CutIntroOptions opt;
        opt.max_cuts = 3;
        Proof p = cut_intro(ex.sequent, ex.instances, opt).proof;
        Proof q = io::proof_from_json(json::parse(io::to_json(p).dump()));
        EXPECT_EQ(render(q), render(p));
        EXPECT_EQ(stats(q), stats(p));
        EXPECT_TRUE(check_proof(q).empty());
    }
}

TEST(Io, ReportFields) {
    Example ex = generate_example("linear", 9);
    json j = io::to_json(cut_intro(ex.sequent, ex.instances).report);
    for (const char* k : {"input", "terms", "grammar", "minimized", "cut_formulas", "output", "compression_ratio"})
        EXPECT_TRUE(j.contains(k)) << k;
    EXPECT_EQ(j["output"]["quantifier_complexity"], 6);
}

TEST(Io, MalformedInstanceFiles) {
    json base = io::to_json(generate_example("linear", 2).sequent, generate_example("linear", 2).instances);

    json j = base;
    j.erase("sequent");
    EXPECT_TRUE(starts_with(error_of([&] { io::instance_file_from_json(j); }), "/: missing field 'sequent'"));

    j = base;
    j["instances"][0]["formula"] = 7;
    EXPECT_TRUE(starts_with(error_of([&] { io::instance_file_from_json(j); }), "/instances/0/formula"));

    j = base;
    j["instances"][0]["tuples"][1] = json::array({"0", "0"});
    EXPECT_TRUE(starts_with(error_of([&] { io::instance_file_from_json(j); }), "/instances/0/tuples/1"));

    j = base;
    j["instances"][0]["tuples"][0][0] = "s(0";
    EXPECT_TRUE(starts_with(error_of([&] { io::instance_file_from_json(j); }), "/instances/0/tuples/0/0"));

    j = base;
    j["sequent"]["antecedent"][0] = "∀x ∃y P(x,y)";
    EXPECT_TRUE(starts_with(error_of([&] { io::instance_file_from_json(j); }), "/sequent"));
}

TEST(Io, MalformedGrammarAndEhs) {
    json g = json::parse(R"j({"base": ["f2(α)"], "levels": [{"var": "α", "productions": ["f(α)"]}]})j");
    EXPECT_FALSE(error_of([&] { io::grammar_from_json(g); }).empty());
    g = json::parse(R"({"levels": []})");
    EXPECT_TRUE(starts_with(error_of([&] { io::grammar_from_json(g); }), "/: missing field 'base'"));

    Example ex = generate_example("linear", 9);
    json h = io::to_json(*cut_intro(ex.sequent, ex.instances).ehs);
    h["solution"] = json::array();
    EXPECT_TRUE(starts_with(error_of([&] { io::ehs_from_json(h); }), "/solution"));
    h = io::to_json(*cut_intro(ex.sequent, ex.instances).ehs);
    h["grammar"]["base"] = json::array({"f2(α)"});
    EXPECT_TRUE(starts_with(error_of([&] { io::ehs_from_json(h); }), "/grammar"));
}

TEST(Io, MalformedProofs) {
    Example ex = generate_example("linear", 2);
    json p = io::to_json(ex.proof);
    p["root"]["rule"] = "weakening";
    EXPECT_TRUE(starts_with(error_of([&] { io::proof_from_json(p); }), "/root/rule"));
    p = io::to_json(ex.proof);
    p["root"]["premises"][0]["sequent"]["antecedent"][0] = "P(";
    EXPECT_TRUE(starts_with(error_of([&] { io::proof_from_json(p); }), "/root/premises/0/sequent/antecedent/0"));
}

TEST(Io, FileErrors) {
    auto dir = std::filesystem::temp_directory_path() / "cutforge_io_test";
    std::filesystem::create_directories(dir);
    std::string bad = (dir / "bad.json").string();
    io::write_text_file(bad, "{\"sequent\": [1, 2,");
    std::string msg = error_of([&] { io::read_json_file(bad); });
    EXPECT_NE(msg.find("byte"), std::string::npos) << msg;
    EXPECT_FALSE(error_of([&] { io::read_json_file((dir / "missing.json").string()); }).empty());
    std::filesystem::remove_all(dir);
}
