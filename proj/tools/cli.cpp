/*
 * Copyright (C) 2026 The hierkey Authors
 * Licensed under the Apache License, Version 2.0 (the "License");
 */
#include "cli.hpp"

#include "hierkey/attacks.hpp"
#include "hierkey/board.hpp"
#include "hierkey/dynamics.hpp"
#include "hierkey/error.hpp"
#include "hierkey/radixshift.hpp"
#include "hierkey/schemes.hpp"

#include <CLI11.hpp>

#include <filesystem>
#include <random>
#include <sstream>

namespace hierkey::cli {

namespace {

struct Options {
    std::string home;

    std::string scheme = "m1";
    std::uint64_t p = 99991;
    std::string curve;
    unsigned base = 10;
    std::optional<std::uint64_t> seed;
    bool force = false;

    std::string id;
    std::vector<std::string> above;
    std::vector<std::string> below;
    std::optional<std::uint64_t> key;

    std::string viewer;
    std::string target;
    bool verify = false;

    std::optional<std::uint64_t> epoch;
    bool show_secrets = false;

    std::string epochs;
};

class UsageError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

template <class Range>
std::string join(const Range& items, const char* sep = ", ")
{
    std::ostringstream os;
    bool first = true;
    for (const auto& item : items) {
        os << (first ? "" : sep) << item;
        first = false;
    }
    return os.str();
}

std::vector<std::uint64_t> parse_list(const std::string& text, const char* flag)
{
    std::vector<std::uint64_t> out;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) {
        try {
            std::size_t used = 0;
            out.push_back(std::stoull(item, &used));
            if (used != item.size()) {
                throw std::invalid_argument(item);
            }
        } catch (const std::exception&) {
            throw UsageError(std::string(flag) + ": '" + item + "' is not an integer");
        }
    }
    return out;
}

StateStore store_for(const Options& o)
{
    return o.home.empty() ? StateStore::from_environment() : StateStore(o.home);
}

KeyState load_state(const StateStore& store)
{
    if (!store.exists()) {
        throw Error(Errc::InvalidParameter, "no CA state in " + store.home().string() + "; run 'init' first");
    }
    return store.load();
}

int filter_degree(const PublicClass& c)
{
    return c.filter.is_zero() ? 0 : c.filter.degree();
}

/// Persists a mutation after checking it against a from-scratch rebuild.
void commit(const StateStore& store, const Mutation& m)
{
    if (!(rebuild_oracle(m.state) == m.state.board)) {
        throw Error(Errc::InvalidParameter, "incremental board disagrees with rebuild; state not saved");
    }
    store.save(m.state);
}

void print_mutation(std::ostream& out, const Mutation& m)
{
    out << "epoch " << m.state.board.epoch;
    if (!m.added.empty()) {
        out << ": added " << join(m.added);
    }
    if (!m.removed.empty()) {
        out << ": removed " << join(m.removed);
    }
    out << "\n";
    out << "updated: " << (m.updated.empty() ? std::string("none") : join(m.updated)) << "\n";
}

int cmd_init(const Options& o, std::ostream& out)
{
    const StateStore store = store_for(o);
    if (store.exists() && !o.force) {
        throw Error(Errc::InvalidParameter,
                    "CA state already exists in " + store.home().string() + " (use --force to replace it)");
    }
    const Scheme scheme = parse_scheme(o.scheme);
    SchemeParams params{scheme, Modulus(o.p), o.base, std::nullopt};
    if (!o.curve.empty()) {
        if (!uses_curve(scheme)) {
            throw UsageError("--curve applies only to the jw, linhsu and m1 schemes");
        }
        const auto v = parse_list(o.curve, "--curve");
        if (v.size() != 6) {
            throw UsageError("--curve expects p,a,b,Gx,Gy,q");
        }
        params.curve.emplace(v[0], v[1], v[2], Point::affine(v[3], v[4]), v[5], PointMap::XCoordinate);
    } else if (uses_curve(scheme)) {
        params.curve = CurveContext::generate(o.p);
    }
    params.validate();

    const std::uint64_t seed = o.seed ? *o.seed : std::random_device{}() * 0x100000000ull + std::random_device{}();
    Rng rng(seed, 0);
    const KeyState state = init_state(params, seed, rng);
    if (store.exists()) {
        std::filesystem::remove_all(store.home() / "history");
    }
    store.save(state);

    out << "initialized " << to_string(scheme) << " CA in " << store.home().string() << "\n";
    out << "p = " << o.p << ", base " << o.base << ", seed " << seed << ", epoch " << state.board.epoch << "\n";
    if (params.curve) {
        const CurveContext& c = *params.curve;
        out << "curve y^2 = x^3 + " << c.a() << "x + " << c.b() << " over F_" << c.p() << ", G = ("
            << c.generator().x << ", " << c.generator().y << "), q = " << c.order() << "\n";
    }
    return kExitOk;
}

int cmd_class_add(const Options& o, std::ostream& out)
{
    const StateStore store = store_for(o);
    const KeyState state = load_state(store);
    Rng rng(state.secrets.seed, state.board.epoch + 1);
    const Mutation m = insert_class_dynamic(state, o.id, o.above, o.below, rng, o.key);
    commit(store, m);
    print_mutation(out, m);
    return kExitOk;
}

int cmd_class_remove(const Options& o, std::ostream& out)
{
    const StateStore store = store_for(o);
    const KeyState state = load_state(store);
    Rng rng(state.secrets.seed, state.board.epoch + 1);
    const Mutation m = remove_class_dynamic(state, o.id, rng);
    commit(store, m);
    print_mutation(out, m);
    return kExitOk;
}

int cmd_derive(const Options& o, std::ostream& out)
{
    const KeyState state = load_state(store_for(o));
    const std::uint64_t key = derive_key(state.board, credentials_of(state, o.viewer), o.target);
    out << "K(" << o.target << ") = " << key << "\n";
    if (o.verify) {
        const std::uint64_t stored = state.secrets.at(o.target).key;
        if (stored != key) {
            out << "MISMATCH: CA store holds " << stored << "\n";
            return kExitDomain;
        }
        out << "OK\n";
    }
    return kExitOk;
}

int cmd_board_show(const Options& o, std::ostream& out)
{
    const StateStore store = store_for(o);
    if (o.epoch) {
        out << serialize_board(store.load_epoch(*o.epoch));
        return kExitOk;
    }
    const KeyState state = load_state(store);
    out << serialize_board(state.board);
    if (o.show_secrets) {
        out << serialize_secrets(state.secrets, state.scheme());
    }
    return kExitOk;
}

void print_report(std::ostream& out, const AttackReport& r, const ClassId& target, std::uint64_t e1,
                  std::uint64_t e2)
{
    out << "attack: " << to_string(r.kind) << "\n";
    out << "class: " << target << "\n";
    out << "epochs: " << e1 << " -> " << e2 << "\n";
    out << "old filter: [" << join(r.old_coefficients) << "]\n";
    out << "new filter: [" << join(r.new_coefficients) << "]\n";
    out << "shift used: " << (r.shift_used ? std::to_string(*r.shift_used) : std::string("none")) << "\n";
    out << "candidate roots: [" << join(r.candidate_roots) << "]\n";
    out << "candidate keys: [" << join(r.candidate_keys) << "]\n";
    if (r.degenerate) {
        out << "degenerate: difference polynomial is identically zero\n";
    }
    if (!r.success) {
        out << "result: unjudged (class no longer in the CA store)\n";
    } else if (*r.success) {
        out << "result: RECOVERED true key\n";
    } else {
        out << "result: failed, no candidate equals the true key\n";
    }
}

int cmd_attack(AttackKind kind, const Options& o, std::ostream& out)
{
    const auto e = parse_list(o.epochs, "--epochs");
    if (e.size() != 2) {
        throw UsageError("--epochs expects k1,k2");
    }
    const StateStore store = store_for(o);
    const PublicBoard before = store.load_epoch(e[0]);
    const PublicBoard after = store.load_epoch(e[1]);
    AttackReport report = attack_boards(kind, before, after, o.id);
    if (store.exists()) {
        const CaSecrets secrets = load_secrets(store.secrets_path());
        if (auto it = secrets.classes.find(o.id); it != secrets.classes.end()) {
            judge(report, it->second.key);
        }
    }
    print_report(out, report, o.id, e[0], e[1]);
    return kExitOk;
}

class Checklist {
public:
    explicit Checklist(std::ostream& out) : out_(out) {}

    void check(bool ok, const std::string& label)
    {
        out_ << (ok ? "PASS  " : "FAIL  ") << label << "\n";
        failures_ += ok ? 0 : 1;
    }
    int failures() const noexcept { return failures_; }

private:
    std::ostream& out_;
    int failures_ = 0;
};

std::string degree_vector(const PublicBoard& board, const std::vector<ClassId>& ids)
{
    std::vector<int> d;
    for (const auto& id : ids) {
        d.push_back(filter_degree(board.at(id)));
    }
    return "(" + join(d) + ")";
}

bool all_derivations_hold(const KeyState& state)
{
    const Hierarchy& h = state.board.hierarchy;
    for (const auto& target : h.classes()) {
        for (const auto& viewer : h.strict_predecessors(target)) {
            if (derive_key(state.board, credentials_of(state, viewer), target) != state.secrets.at(target).key) {
                return false;
            }
        }
    }
    return true;
}

int cmd_demo(const Options& o, std::ostream& out)
{
    Checklist list(out);

    out << "-- cyclic shift, base 10\n";
    const RadixContext dec(10, 99991);
    const std::uint64_t dec_expected[] = {23491, 24913, 29134, 21349};
    for (int l = 1; l <= 4; ++l) {
        const auto v = cyclic_shift(21349, l, dec);
        list.check(v == dec_expected[l - 1], "L_" + std::to_string(l) + "(21349) = " + std::to_string(v));
    }

    out << "-- cyclic shift, base 2\n";
    const RadixContext bin(2, 31);
    const std::uint64_t bin_expected[] = {0b11101, 0b11011, 0b10111, 0b11110};
    for (int l = 1; l <= 4; ++l) {
        const auto v = cyclic_shift(0b11110, l, bin);
        std::string bits;
        for (int i = 4; i >= 0; --i) {
            bits += ((v >> i) & 1) ? '1' : '0';
        }
        list.check(v == bin_expected[l - 1], "L_" + std::to_string(l) + "((11110)_2) = (" + bits + ")_2");
    }

    out << "-- top digit equal to p's breaks the inverse\n";
    const RadixContext small(10, 239);
    const auto forward = cyclic_shift(235, 1, small);
    const auto back = cyclic_shift(forward, -1, small);
    list.check(back == 41, "b=10, p=239: L_1(235) = " + std::to_string(forward) + ", L_-1 of that = " +
                               std::to_string(back) + " != 235");

    out << "-- five-class hierarchy, scheme m1, p = " << o.p << "\n";
    Hierarchy h;
    h = h.add_class("u1", {}, {});
    h = h.add_class("u2", {"u1"}, {});
    h = h.add_class("u3", {"u1"}, {});
    h = h.add_class("u4", {"u2"}, {});
    h = h.add_class("u5", {"u2", "u3"}, {});
    SchemeParams params{Scheme::Method1, Modulus(o.p), 10, CurveContext::generate(o.p)};
    const std::uint64_t seed = o.seed.value_or(1);
    Rng rng(seed, 0);
    const KeyState fig1 = generate_state(params, h, seed, rng);
    const std::vector<ClassId> ids{"u1", "u2", "u3", "u4", "u5"};
    list.check(degree_vector(fig1.board, ids) == "(0, 2, 2, 3, 4)",
               "filter degrees " + degree_vector(fig1.board, ids));
    list.check(all_derivations_hold(fig1), "every predecessor derives its successors' keys");

    out << "-- insert u6 with u4 < u6 < u1\n";
    Rng rng_insert(seed, 1);
    const Mutation ins = insert_class_dynamic(fig1, "u6", {"u1"}, {"u4"}, rng_insert);
    list.check(ins.updated == std::set<ClassId>{"u4"}, "updated filters: " + join(ins.updated));
    list.check(filter_degree(ins.state.board.at("u4")) == 4 && filter_degree(ins.state.board.at("u6")) == 2,
               "deg f_4 = " + std::to_string(filter_degree(ins.state.board.at("u4"))) +
                   ", deg f_6 = " + std::to_string(filter_degree(ins.state.board.at("u6"))));
    const auto diff = diff_epochs(fig1.board, ins.state.board);
    std::vector<std::string> diff_text;
    for (const auto& d : diff) {
        diff_text.push_back(d.id + " " + std::string(to_string(d.change)));
    }
    list.check(diff_text == std::vector<std::string>{"u4 changed", "u6 added"}, "board diff: " + join(diff_text));
    const bool u6_u4 = derive_key(ins.state.board, credentials_of(ins.state, "u6"), "u4") ==
                       ins.state.secrets.at("u4").key;
    list.check(u6_u4, "u6 derives K_4");
    list.check(all_derivations_hold(ins.state), "every predecessor derives its successors' keys");
    list.check(rebuild_oracle(ins.state) == ins.state.board, "incremental board equals rebuild");

    out << "-- remove u3\n";
    Rng rng_remove(seed, 1);
    const Mutation rem = remove_class_dynamic(fig1, "u3", rng_remove);
    list.check(rem.updated == std::set<ClassId>{"u5"}, "updated filters: " + join(rem.updated));
    list.check(filter_degree(rem.state.board.at("u5")) == 3,
               "deg f_5: 4 -> " + std::to_string(filter_degree(rem.state.board.at("u5"))));
    list.check(all_derivations_hold(rem.state), "every predecessor derives its successors' keys");
    list.check(rebuild_oracle(rem.state) == rem.state.board, "incremental board equals rebuild");

    out << (list.failures() == 0 ? "all checks passed" : std::to_string(list.failures()) + " check(s) failed")
        << "\n";
    return list.failures() == 0 ? kExitOk : kExitDomain;
}

} // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err)
{
    Options o;
    CLI::App app{"Hierarchical key assignment with secure filters", "hierkey"};
    app.add_option("--home", o.home, "CA state directory (default $HIERKEY_HOME or ./hierkey-state)");
    app.require_subcommand(1);

    auto* init = app.add_subcommand("init", "Create a CA and an empty board");
    init->add_option("--scheme", o.scheme, "akl, wu, jw, linhsu, m1 or m2")->capture_default_str();
    init->add_option("--p", o.p, "Prime modulus")->capture_default_str();
    init->add_option("--curve", o.curve, "p,a,b,Gx,Gy,q (default: generated over F_p)");
    init->add_option("--base", o.base, "Radix for the cyclic shift")->capture_default_str();
    init->add_option("--seed", o.seed, "RNG seed (default: random)");
    init->add_flag("--force", o.force, "Replace existing state");

    auto* cls = app.add_subcommand("class", "Enroll or remove a security class");
    cls->require_subcommand(1);
    auto* add = cls->add_subcommand("add", "Insert a class");
    add->add_option("id", o.id)->required();
    add->add_option("--above", o.above, "Immediate predecessor (repeatable)");
    add->add_option("--below", o.below, "Immediate successor (repeatable)");
    add->add_option("--key", o.key, "Use this key instead of a random one");
    auto* remove = cls->add_subcommand("remove", "Remove a class");
    remove->add_option("id", o.id)->required();

    auto* derive = app.add_subcommand("derive", "Derive a successor's key from the public board");
    derive->add_option("--as", o.viewer)->required();
    derive->add_option("--target", o.target)->required();
    derive->add_flag("--verify", o.verify, "Compare with the CA store");

    auto* board = app.add_subcommand("board", "Inspect the public board");
    board->require_subcommand(1);
    auto* show = board->add_subcommand("show", "Print a board");
    show->add_option("--epoch", o.epoch, "Historical epoch");
    show->add_flag("--unsafe-show-secrets", o.show_secrets, "Also print the CA secret store");

    auto* attack = app.add_subcommand("attack", "Run an attack across two epochs");
    attack->require_subcommand(1);
    std::vector<std::pair<CLI::App*, AttackKind>> attacks;
    for (auto [name, kind] : {std::pair{"linhsu", AttackKind::LinHsu}, std::pair{"tp", AttackKind::TripathyPaul}}) {
        auto* sub = attack->add_subcommand(name, kind == AttackKind::LinHsu ? "Root scan of new - old"
                                                                             : "Subleading coefficient difference");
        sub->add_option("--class", o.id)->required();
        sub->add_option("--epochs", o.epochs, "k1,k2")->required();
        attacks.emplace_back(sub, kind);
    }

    auto* demo = app.add_subcommand("demo", "Worked examples");
    demo->require_subcommand(1);
    auto* worked = demo->add_subcommand("paper", "Replay the worked examples and print pass/fail per check");
    worked->add_option("--p", o.p, "Prime modulus for the hierarchy replay")->capture_default_str();
    worked->add_option("--seed", o.seed, "RNG seed (default 1)");

    std::vector<const char*> argv{"hierkey"};
    for (const auto& a : args) {
        argv.push_back(a.c_str());
    }
    try {
        app.parse(static_cast<int>(argv.size()), argv.data());
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? kExitOk : kExitUsage;
    }

    try {
        if (init->parsed()) {
            return cmd_init(o, out);
        }
        if (add->parsed()) {
            return cmd_class_add(o, out);
        }
        if (remove->parsed()) {
            return cmd_class_remove(o, out);
        }
        if (derive->parsed()) {
            return cmd_derive(o, out);
        }
        if (show->parsed()) {
            return cmd_board_show(o, out);
        }
        for (const auto& [sub, kind] : attacks) {
            if (sub->parsed()) {
                return cmd_attack(kind, o, out);
            }
        }
        if (worked->parsed()) {
            return cmd_demo(o, out);
        }
    } catch (const UsageError& e) {
        err << "usage error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const Error& e) {
        err << "error: " << e.what() << "\n";
        return kExitDomain;
    } catch (const std::filesystem::filesystem_error& e) {
        err << "error: " << e.what() << "\n";
        return kExitDomain;
    }
    err << "usage error: no command\n";
    return kExitUsage;
}

} // namespace hierkey::cli
