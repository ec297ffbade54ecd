/*
 * Copyright (C) 2026 The hierkey Authors
 * Licensed under the Apache License, Version 2.0 (the "License");
 */
#include "cli.hpp"

#include "hierkey/board.hpp"

#include <doctest.h>

#include <filesystem>
#include <random>
#include <sstream>

namespace fs = std::filesystem;

namespace {

struct Result {
    int code;
    std::string out;
    std::string err;
};

struct Session {
    fs::path home;

    Session()
    {
        home = fs::temp_directory_path() / ("hierkey-cli-" + std::to_string(std::random_device{}()));
    }
    ~Session() { fs::remove_all(home); }

    Result operator()(std::vector<std::string> args) const
    {
        args.insert(args.begin(), {"--home", home.string()});
        std::ostringstream out, err;
        const int code = hierkey::cli::run(args, out, err);
        return {code, out.str(), err.str()};
    }

    void five_classes(const std::string& scheme) const
    {
        REQUIRE(operator()({"init", "--scheme", scheme, "--seed", "5"}).code == 0);
        REQUIRE(operator()({"class", "add", "u1"}).code == 0);
        REQUIRE(operator()({"class", "add", "u2", "--above", "u1"}).code == 0);
        REQUIRE(operator()({"class", "add", "u3", "--above", "u1"}).code == 0);
        REQUIRE(operator()({"class", "add", "u4", "--above", "u2"}).code == 0);
        REQUIRE(operator()({"class", "add", "u5", "--above", "u2", "--above", "u3"}).code == 0);
    }
};

bool has(const std::string& text, const std::string& needle)
{
    return text.find(needle) != std::string::npos;
}

} // namespace

TEST_CASE("usage errors exit with 2")
{
    Session s;
    CHECK(s({}).code == 2);
    CHECK(s({"bogus"}).code == 2);
    CHECK(s({"init", "--p", "abc"}).code == 2);
    CHECK(s({"class", "add"}).code == 2);
    CHECK(s({"attack", "tp", "--class", "u1"}).code == 2);
    CHECK(s({"init", "--scheme", "wu", "--curve", "17,2,2,5,1,19"}).code == 2);
    CHECK(s({"--help"}).code == 0);
}

TEST_CASE("domain errors exit with 1")
{
    Session s;
    CHECK(s({"derive", "--as", "a", "--target", "b"}).code == 1);
    CHECK(s({"init", "--scheme", "rsa"}).code == 1);
    CHECK(s({"init", "--p", "99990"}).code == 1);
    REQUIRE(s({"init", "--seed", "1"}).code == 0);
    CHECK(s({"init", "--seed", "1"}).code == 1);
    CHECK(s({"init", "--seed", "1", "--force"}).code == 0);
    REQUIRE(s({"class", "add", "a"}).code == 0);
    REQUIRE(s({"class", "add", "b", "--above", "a"}).code == 0);
    const auto cycle = s({"class", "add", "c", "--above", "b", "--below", "a"});
    CHECK(cycle.code == 1);
    CHECK(has(cycle.err, "CycleCreated"));
    CHECK(has(s({"class", "add", "d", "--key", "7777"}).err, "NotShiftable"));
    CHECK(s({"class", "remove", "zz"}).code == 1);
}

TEST_CASE("init, enroll, insert and derive")
{
    Session s;
    s.five_classes("m1");
    const auto ins = s({"class", "add", "u6", "--above", "u1", "--below", "u4"});
    CHECK(ins.code == 0);
    CHECK(has(ins.out, "epoch 6"));
    CHECK(has(ins.out, "updated: u4"));
    const auto d = s({"derive", "--as", "u6", "--target", "u4", "--verify"});
    CHECK(d.code == 0);
    CHECK(has(d.out, "OK"));
    CHECK(s({"derive", "--as", "u4", "--target", "u1"}).code == 1);

    const auto rem = s({"class", "remove", "u3"});
    CHECK(rem.code == 0);
    CHECK(has(rem.out, "updated: u5"));
    CHECK(s({"derive", "--as", "u1", "--target", "u5", "--verify"}).code == 0);

    const auto board = hierkey::load_board(s.home / "board.json");
    CHECK(board.epoch == 7);
    CHECK(board.classes.size() == 5);
}

TEST_CASE("board show hides secrets unless asked")
{
    Session s;
    s.five_classes("m2");
    const auto plain = s({"board", "show"});
    CHECK(plain.code == 0);
    CHECK(has(plain.out, "\"version\": 1"));
    CHECK_FALSE(has(plain.out, "ca_key"));
    const auto secret = s({"board", "show", "--unsafe-show-secrets"});
    CHECK(has(secret.out, "ca_key"));
    const auto old = s({"board", "show", "--epoch", "2"});
    CHECK(old.code == 0);
    CHECK(has(old.out, "\"epoch\": 2"));
    CHECK(s({"board", "show", "--epoch", "42"}).code == 1);
}

TEST_CASE("attack across an insertion: recovered on jw, not on m1")
{
    for (const std::string scheme : {"jw", "m1"}) {
        Session s;
        s.five_classes(scheme);
        REQUIRE(s({"class", "add", "u6", "--above", "u1", "--below", "u4"}).code == 0);
        const auto tp = s({"attack", "tp", "--class", "u4", "--epochs", "5,6"});
        CHECK(tp.code == 0);
        const auto lh = s({"attack", "linhsu", "--class", "u4", "--epochs", "5,6"});
        CHECK(lh.code == 0);
        const bool recovered = scheme == "jw";
        CHECK(has(tp.out, "RECOVERED") == recovered);
        CHECK(has(lh.out, "RECOVERED") == recovered);
    }
}

TEST_CASE("a fixed seed gives byte-identical runs")
{
    Session a, b;
    a.five_classes("jw");
    b.five_classes("jw");
    CHECK(a({"board", "show", "--unsafe-show-secrets"}).out == b({"board", "show", "--unsafe-show-secrets"}).out);
}

TEST_CASE("demo replays the worked examples")
{
    Session s;
    const auto r = s({"demo", "paper"});
    CHECK(r.code == 0);
    CHECK(has(r.out, "PASS  L_1(21349) = 23491"));
    CHECK(has(r.out, "= 41 != 235"));
    CHECK(has(r.out, "filter degrees (0, 2, 2, 3, 4)"));
    CHECK_FALSE(has(r.out, "FAIL"));
}
