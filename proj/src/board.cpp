/*
 * Copyright (C) 2026 The hierkey Authors
 * Licensed under the Apache License, Version 2.0 (the "License");
 */
#include "hierkey/board.hpp"

#include "hierkey/error.hpp"

#include <json.hpp>

#include <charconv>
#include <cstdlib>
#include <fstream>
#include <sstream>

namespace hierkey {

using ojson = nlohmann::ordered_json;
namespace fs = std::filesystem;

namespace {

std::string dec(std::uint64_t v)
{
    return std::to_string(v);
}

std::uint64_t parse_uint(const ojson& node, const std::string& field)
{
    if (!node.is_string()) {
        throw Error(Errc::ParseError, field + ": expected a decimal string");
    }
    const auto& s = node.get_ref<const std::string&>();
    std::uint64_t v = 0;
    auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (s.empty() || ec != std::errc() || ptr != s.data() + s.size()) {
        throw Error(Errc::ParseError, field + ": '" + s + "' is not a decimal integer");
    }
    return v;
}

const ojson& child(const ojson& node, const char* key, const std::string& field)
{
    if (!node.is_object() || !node.contains(key)) {
        throw Error(Errc::ParseError, field + ": missing field '" + key + "'");
    }
    return node.at(key);
}

std::uint64_t small_number(const ojson& node, const std::string& field)
{
    if (!node.is_number_unsigned()) {
        throw Error(Errc::ParseError, field + ": expected a non-negative number");
    }
    return node.get<std::uint64_t>();
}

ojson point_json(const Point& p)
{
    ojson j;
    j["x"] = dec(p.x);
    j["y"] = dec(p.y);
    return j;
}

Point parse_point(const ojson& node, const std::string& field)
{
    return Point::affine(parse_uint(child(node, "x", field), field + ".x"),
                         parse_uint(child(node, "y", field), field + ".y"));
}

ojson parse_document(std::string_view text)
{
    try {
        return ojson::parse(text.begin(), text.end());
    } catch (const nlohmann::json::parse_error& e) {
        throw Error(Errc::ParseError, e.what());
    }
}

void check_version(const ojson& doc)
{
    const auto v = small_number(child(doc, "version", "document"), "version");
    if (v != static_cast<std::uint64_t>(kFormatVersion)) {
        throw Error(Errc::VersionMismatch,
                    "file version " + std::to_string(v) + ", expected " + std::to_string(kFormatVersion));
    }
}

std::string read_file(const fs::path& path)
{
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw Error(Errc::ParseError, "cannot open " + path.string());
    }
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

void write_atomically(const fs::path& path, const std::string& bytes, bool owner_only)
{
    fs::path tmp = path;
    tmp += ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out) {
            throw Error(Errc::InvalidParameter, "cannot write " + tmp.string());
        }
        if (owner_only) {
            fs::permissions(tmp, fs::perms::owner_read | fs::perms::owner_write, fs::perm_options::replace);
        }
        out << bytes;
        if (!out.flush()) {
            throw Error(Errc::InvalidParameter, "short write to " + tmp.string());
        }
    }
    fs::rename(tmp, path);
}

} // namespace

std::string serialize_board(const PublicBoard& board)
{
    const SchemeParams& params = board.params;
    ojson doc;
    doc["version"] = kFormatVersion;
    doc["epoch"] = board.epoch;
    doc["scheme"] = std::string(to_string(params.scheme));

    ojson pj;
    pj["p"] = dec(params.p.value());
    pj["base"] = params.radix_base;
    if (params.curve) {
        const CurveContext& c = *params.curve;
        ojson cj;
        cj["p"] = dec(c.p());
        cj["a"] = dec(c.a());
        cj["b"] = dec(c.b());
        cj["Gx"] = dec(c.generator().x);
        cj["Gy"] = dec(c.generator().y);
        cj["q"] = dec(c.order());
        cj["map"] = std::string(to_string(c.map()));
        pj["curve"] = std::move(cj);
    }
    if (board.ca_public_key) {
        pj["ca_public_key"] = point_json(*board.ca_public_key);
    }
    if (board.salt) {
        pj["salt"] = dec(*board.salt);
    }
    doc["params"] = std::move(pj);

    ojson classes = ojson::object();
    for (const auto& [id, pub] : board.classes) {
        ojson cj;
        if (params.scheme == Scheme::Akl) {
            cj["prime"] = dec(pub.prime);
            cj["t"] = pub.exponent.str();
        } else if (pub.filter.is_zero()) {
            cj["filter"] = nullptr;
        } else {
            ojson coeffs = ojson::array();
            const auto c = pub.filter.coefficients();
            for (std::size_t i = 0; i + 1 < c.size(); ++i) {
                coeffs.push_back(dec(c[i]));
            }
            cj["filter"] = std::move(coeffs);
        }
        if (pub.public_key) {
            cj["public_key"] = point_json(*pub.public_key);
        }
        if (pub.base) {
            cj["g"] = dec(*pub.base);
        }
        if (pub.shift) {
            cj["shift"] = *pub.shift;
        }
        classes[id] = std::move(cj);
    }
    doc["classes"] = std::move(classes);

    ojson edges = ojson::array();
    for (const auto& [pred, succ] : board.hierarchy.edges()) {
        edges.push_back(ojson::array({pred, succ}));
    }
    doc["edges"] = std::move(edges);
    return doc.dump(2) + "\n";
}

PublicBoard parse_board(std::string_view text)
{
    const ojson doc = parse_document(text);
    check_version(doc);
    try {
        const ojson& pj = child(doc, "params", "document");
        const auto scheme_node = child(doc, "scheme", "document");
        if (!scheme_node.is_string()) {
            throw Error(Errc::ParseError, "scheme: expected a string");
        }
        SchemeParams params{parse_scheme(scheme_node.get<std::string>()),
                            Modulus(parse_uint(child(pj, "p", "params"), "params.p")),
                            static_cast<unsigned>(small_number(child(pj, "base", "params"), "params.base")),
                            std::nullopt};
        if (pj.contains("curve")) {
            const ojson& cj = pj.at("curve");
            const std::string f = "params.curve";
            params.curve.emplace(parse_uint(child(cj, "p", f), f + ".p"), parse_uint(child(cj, "a", f), f + ".a"),
                                 parse_uint(child(cj, "b", f), f + ".b"),
                                 Point::affine(parse_uint(child(cj, "Gx", f), f + ".Gx"),
                                               parse_uint(child(cj, "Gy", f), f + ".Gy")),
                                 parse_uint(child(cj, "q", f), f + ".q"),
                                 parse_point_map(child(cj, "map", f).get<std::string>()));
        }
        params.validate();

        PublicBoard board(params);
        board.epoch = small_number(child(doc, "epoch", "document"), "epoch");
        if (pj.contains("ca_public_key")) {
            board.ca_public_key = parse_point(pj.at("ca_public_key"), "params.ca_public_key");
        }
        if (pj.contains("salt")) {
            board.salt = parse_uint(pj.at("salt"), "params.salt");
        }

        const Modulus& p = params.p;
        const ojson& classes = child(doc, "classes", "document");
        if (!classes.is_object()) {
            throw Error(Errc::ParseError, "classes: expected an object");
        }
        Hierarchy h;
        for (const auto& [id, cj] : classes.items()) {
            const std::string f = "classes." + id;
            PublicClass pub(p);
            if (params.scheme == Scheme::Akl) {
                pub.prime = parse_uint(child(cj, "prime", f), f + ".prime");
                const auto& t = child(cj, "t", f);
                if (!t.is_string()) {
                    throw Error(Errc::ParseError, f + ".t: expected a decimal string");
                }
                try {
                    pub.exponent = BigInt(t.get<std::string>());
                } catch (const std::exception&) {
                    throw Error(Errc::ParseError, f + ".t: not a decimal integer");
                }
            } else {
                const ojson& fj = child(cj, "filter", f);
                if (!fj.is_null()) {
                    if (!fj.is_array()) {
                        throw Error(Errc::ParseError, f + ".filter: expected an array or null");
                    }
                    std::vector<std::uint64_t> coeffs;
                    for (std::size_t i = 0; i < fj.size(); ++i) {
                        const auto v = parse_uint(fj[i], f + ".filter[" + std::to_string(i) + "]");
                        if (v >= p.value()) {
                            throw Error(Errc::ParseError, f + ".filter[" + std::to_string(i) + "]: not below p");
                        }
                        coeffs.push_back(v);
                    }
                    coeffs.push_back(1);
                    pub.filter = Poly(p, std::move(coeffs));
                }
            }
            if (cj.contains("public_key")) {
                pub.public_key = parse_point(cj.at("public_key"), f + ".public_key");
            }
            if (cj.contains("g")) {
                pub.base = parse_uint(cj.at("g"), f + ".g");
            }
            if (cj.contains("shift")) {
                pub.shift = static_cast<unsigned>(small_number(cj.at("shift"), f + ".shift"));
            }
            h = h.add_class(id, {}, {});
            board.classes.emplace(id, std::move(pub));
        }
        const ojson& edges = child(doc, "edges", "document");
        if (!edges.is_array()) {
            throw Error(Errc::ParseError, "edges: expected an array");
        }
        for (std::size_t i = 0; i < edges.size(); ++i) {
            const ojson& e = edges[i];
            if (!e.is_array() || e.size() != 2 || !e[0].is_string() || !e[1].is_string()) {
                throw Error(Errc::ParseError, "edges[" + std::to_string(i) + "]: expected [pred, succ]");
            }
            try {
                h = h.add_edge(e[0].get<std::string>(), e[1].get<std::string>());
            } catch (const Error& err) {
                throw Error(Errc::ParseError, "edges[" + std::to_string(i) + "]: " + err.what());
            }
        }
        board.hierarchy = std::move(h);
        return board;
    } catch (const nlohmann::json::exception& e) {
        throw Error(Errc::ParseError, e.what());
    }
}

std::string serialize_secrets(const CaSecrets& secrets, Scheme scheme)
{
    ojson doc;
    doc["version"] = kFormatVersion;
    doc["epoch"] = secrets.epoch;
    doc["scheme"] = std::string(to_string(scheme));
    doc["seed"] = dec(secrets.seed);
    doc["ca_key"] = dec(secrets.ca_key);
    if (secrets.akl_root) {
        doc["akl_root"] = dec(*secrets.akl_root);
    }
    ojson classes = ojson::object();
    for (const auto& [id, s] : secrets.classes) {
        ojson cj;
        cj["key"] = dec(s.key);
        cj["secret"] = dec(s.secret);
        if (s.mask_root) {
            cj["h"] = dec(*s.mask_root);
        }
        classes[id] = std::move(cj);
    }
    doc["classes"] = std::move(classes);
    return doc.dump(2) + "\n";
}

CaSecrets parse_secrets(std::string_view text)
{
    const ojson doc = parse_document(text);
    check_version(doc);
    try {
        CaSecrets s;
        s.epoch = small_number(child(doc, "epoch", "document"), "epoch");
        s.seed = parse_uint(child(doc, "seed", "document"), "seed");
        s.ca_key = parse_uint(child(doc, "ca_key", "document"), "ca_key");
        if (doc.contains("akl_root")) {
            s.akl_root = parse_uint(doc.at("akl_root"), "akl_root");
        }
        const ojson& classes = child(doc, "classes", "document");
        for (const auto& [id, cj] : classes.items()) {
            const std::string f = "classes." + id;
            ClassSecret c;
            c.key = parse_uint(child(cj, "key", f), f + ".key");
            c.secret = parse_uint(child(cj, "secret", f), f + ".secret");
            if (cj.contains("h")) {
                c.mask_root = parse_uint(cj.at("h"), f + ".h");
            }
            s.classes.emplace(id, c);
        }
        return s;
    } catch (const nlohmann::json::exception& e) {
        throw Error(Errc::ParseError, e.what());
    }
}

void save_board(const fs::path& path, const PublicBoard& board)
{
    write_atomically(path, serialize_board(board), false);
}

PublicBoard load_board(const fs::path& path)
{
    return parse_board(read_file(path));
}

void save_secrets(const fs::path& path, const CaSecrets& secrets, Scheme scheme)
{
    write_atomically(path, serialize_secrets(secrets, scheme), true);
}

CaSecrets load_secrets(const fs::path& path)
{
    return parse_secrets(read_file(path));
}

std::string_view to_string(ClassDelta::Change change) noexcept
{
    switch (change) {
    case ClassDelta::Change::Added: return "added";
    case ClassDelta::Change::Removed: return "removed";
    case ClassDelta::Change::Changed: return "changed";
    }
    return "?";
}

std::vector<ClassDelta> diff_epochs(const PublicBoard& older, const PublicBoard& newer)
{
    if (older.scheme() != newer.scheme()) {
        throw Error(Errc::SchemeMismatch, "epochs use different schemes");
    }
    if (!(older.params.p == newer.params.p)) {
        throw Error(Errc::ModulusMismatch, "epochs use different moduli");
    }
    auto coeffs = [](const PublicClass& c) {
        return std::vector<std::uint64_t>(c.filter.coefficients().begin(), c.filter.coefficients().end());
    };
    std::map<ClassId, ClassDelta> out;
    for (const auto& [id, pub] : older.classes) {
        auto it = newer.classes.find(id);
        if (it == newer.classes.end()) {
            out.emplace(id, ClassDelta{id, ClassDelta::Change::Removed, coeffs(pub), {}});
        } else if (!(it->second == pub)) {
            out.emplace(id, ClassDelta{id, ClassDelta::Change::Changed, coeffs(pub), coeffs(it->second)});
        }
    }
    for (const auto& [id, pub] : newer.classes) {
        if (older.classes.count(id) == 0) {
            out.emplace(id, ClassDelta{id, ClassDelta::Change::Added, {}, coeffs(pub)});
        }
    }
    std::vector<ClassDelta> result;
    for (auto& [_, d] : out) {
        result.push_back(std::move(d));
    }
    return result;
}

StateStore StateStore::from_environment()
{
    const char* home = std::getenv("HIERKEY_HOME");
    return StateStore(home != nullptr && *home != '\0' ? fs::path(home) : fs::path("hierkey-state"));
}

fs::path StateStore::snapshot_path(std::uint64_t epoch) const
{
    return home_ / "history" / ("board." + std::to_string(epoch) + ".json");
}

bool StateStore::exists() const
{
    return fs::exists(board_path()) && fs::exists(secrets_path());
}

KeyState StateStore::load() const
{
    PublicBoard board = load_board(board_path());
    CaSecrets secrets = load_secrets(secrets_path());
    if (secrets.epoch != board.epoch) {
        throw Error(Errc::ParseError, "board epoch " + std::to_string(board.epoch) + " but secret store epoch " +
                                          std::to_string(secrets.epoch));
    }
    for (const auto& [id, _] : board.classes) {
        if (secrets.classes.count(id) == 0) {
            throw Error(Errc::ParseError, "secret store has no entry for '" + id + "'");
        }
    }
    return KeyState{std::move(board), std::move(secrets)};
}

void StateStore::save(const KeyState& state) const
{
    fs::create_directories(home_ / "history");
    save_board(snapshot_path(state.board.epoch), state.board);
    save_secrets(secrets_path(), state.secrets, state.scheme());
    save_board(board_path(), state.board);
}

PublicBoard StateStore::load_epoch(std::uint64_t epoch) const
{
    const fs::path path = snapshot_path(epoch);
    if (!fs::exists(path)) {
        throw Error(Errc::InvalidParameter, "no snapshot for epoch " + std::to_string(epoch));
    }
    return load_board(path);
}

} // namespace hierkey
