#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "zemac/io.hpp"

namespace {

using zemac::Assignment;
using zemac::VariableName;
namespace io = zemac::io;

std::vector<std::string> split_list(const std::string& text, const char* what) {
    std::vector<std::string> out;
    std::string current;
    for (char c : text) {
        if (c == ',') {
            if (current.empty())
                throw zemac::ValidationError(std::string("empty name in ") + what);
            out.push_back(current);
            current.clear();
        } else {
            current.push_back(c);
        }
    }
    if (current.empty())
        throw zemac::ValidationError(std::string("empty name in ") + what);
    out.push_back(current);
    return out;
}

Assignment parse_assignment(const std::string& text) {
    Assignment a;
    for (const auto& part : split_list(text, "--given")) {
        auto eq = part.find('=');
        if (eq == std::string::npos || eq == 0 || eq + 1 == part.size())
            throw zemac::ValidationError("assignment '" + part +
                                         "' is not of the form VAR=symbol");
        a.variables.push_back(part.substr(0, eq));
        a.values.push_back(part.substr(eq + 1));
    }
    return a;
}

void emit(const std::string& text, const std::string& out_path) {
    if (out_path.empty()) {
        std::cout << text;
        return;
    }
    std::ofstream out(out_path, std::ios::binary);
    if (!out) throw zemac::ValidationError("cannot write '" + out_path + "'");
    out << text;
}

void emit_json(const io::Json& j, const std::string& out_path) {
    emit(io::dump_json(j), out_path);
}

struct CommonOptions {
    std::string out;
};

struct SubsetOptions {
    std::string world_path;
    std::string vars;
    std::string a, b, c;
    std::string target, cond, given;
    std::string x1, x2, y;
};

struct ChannelOptions {
    std::string channel_path;
    std::string structure_path;
    std::string code_path;
    std::uint32_t n = 1;
    std::uint64_t world_cap = zemac::kDefaultWorldCap;
    std::uint64_t budget = 5'000'000;
    std::uint64_t node_budget = 200'000'000;
    std::optional<std::uint64_t> max_u;
    std::optional<std::uint64_t> max_set_size;
    std::optional<std::uint64_t> mu0, mu1, mu2;
    unsigned threads = 1;
    std::string format = "structured";
};

int run(const std::string& command, const CommonOptions& common,
        const SubsetOptions& subset, const ChannelOptions& chopt) {
    if (command == "info" || command == "cond-info" || command == "partition" ||
        command == "nc-info") {
        zemac::World world = io::world_from_json(io::parse_file(subset.world_path));
        if (command == "info") {
            std::vector<VariableName> a, b;
            if (!subset.vars.empty()) {
                auto names = split_list(subset.vars, "--vars");
                if (names.size() != 2)
                    throw zemac::ValidationError(
                        "--vars expects exactly two comma-separated names; use "
                        "--a/--b for multi-variable groups");
                a = {names[0]};
                b = {names[1]};
            } else if (!subset.a.empty() && !subset.b.empty()) {
                a = split_list(subset.a, "--a");
                b = split_list(subset.b, "--b");
            } else {
                throw zemac::ValidationError("info requires --vars or both --a and --b");
            }
            emit_json(io::info_to_json(zemac::nonstochastic_info(world, a, b)), common.out);
        } else if (command == "cond-info") {
            if (subset.a.empty() || subset.b.empty() || subset.c.empty())
                throw zemac::ValidationError("cond-info requires --a, --b and --c");
            emit_json(io::info_to_json(zemac::conditional_info(
                          world, split_list(subset.a, "--a"), split_list(subset.b, "--b"),
                          split_list(subset.c, "--c"))),
                      common.out);
        } else if (command == "partition") {
            if (subset.target.empty() || subset.cond.empty())
                throw zemac::ValidationError("partition requires --target and --cond");
            auto target = split_list(subset.target, "--target");
            auto cond = split_list(subset.cond, "--cond");
            zemac::Partition p =
                subset.given.empty()
                    ? zemac::overlap_partition(world, target, cond)
                    : zemac::conditional_overlap_partition(world, target, cond,
                                                           parse_assignment(subset.given));
            emit_json(io::partition_to_json(p), common.out);
        } else {
            if (subset.x1.empty() || subset.x2.empty() || subset.y.empty())
                throw zemac::ValidationError("nc-info requires --x1, --x2 and --y");
            emit_json(io::info_to_json(zemac::nc_info(world, split_list(subset.x1, "--x1"),
                                                      split_list(subset.x2, "--x2"),
                                                      split_list(subset.y, "--y"))),
                      common.out);
        }
        return 0;
    }

    zemac::Channel channel = io::channel_from_json(io::parse_file(chopt.channel_path));
    if (command == "synthesize") {
        zemac::CooperationStructure s =
            io::structure_from_json(channel, io::parse_file(chopt.structure_path));
        emit_json(io::synthesis_to_json(zemac::synthesize_code(channel, s, chopt.world_cap)),
                  common.out);
    } else if (command == "verify") {
        zemac::Code code = io::code_from_json(io::parse_file(chopt.code_path));
        emit_json(io::verify_to_json(zemac::verify_zero_error(channel, code.spec(), code,
                                                              chopt.world_cap)),
                  common.out);
    } else if (command == "region") {
        zemac::RegionBounds bounds;
        bounds.max_u = chopt.max_u;
        bounds.max_set_size = chopt.max_set_size;
        bounds.census_budget = chopt.budget;
        bounds.world_cap = chopt.world_cap;
        bounds.threads = chopt.threads;
        zemac::RateRegion region = zemac::capacity_region(channel, chopt.n, bounds);
        if (chopt.format == "csv") emit(io::region_csv(region), common.out);
        else emit_json(io::region_to_json(region), common.out);
    } else if (command == "oracle-region") {
        zemac::OracleBounds bounds;
        bounds.mu0 = chopt.mu0;
        bounds.mu1 = chopt.mu1;
        bounds.mu2 = chopt.mu2;
        bounds.node_budget = chopt.node_budget;
        bounds.threads = chopt.threads;
        zemac::OracleRegion region = zemac::oracle_region(channel, chopt.n, bounds);
        if (chopt.format == "csv") emit(io::oracle_region_csv(region), common.out);
        else emit_json(io::oracle_region_to_json(region), common.out);
    } else if (command == "single-user") {
        zemac::InfoValue value =
            zemac::single_user_capacity(channel, chopt.n, chopt.node_budget);
        io::Json j;
        j["n"] = chopt.n;
        j["cells"] = value.cells;
        j["bits"] = value.bits();
        emit_json(j, common.out);
    } else {
        throw zemac::ValidationError("unknown command '" + command + "'");
    }
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"zemac: exact nonstochastic-information and zero-error MAC code toolkit"};
    app.require_subcommand(1);

    CommonOptions common;
    SubsetOptions subset;
    ChannelOptions chopt;

    auto add_common = [&](CLI::App* cmd) {
        cmd->add_option("--out", common.out, "write the report to this file instead of stdout");
    };

    auto* info = app.add_subcommand("info", "nonstochastic information I*[a;b] of a world");
    info->add_option("--world", subset.world_path, "world file")->required();
    info->add_option("--vars", subset.vars, "two comma-separated variable names");
    info->add_option("--a", subset.a, "first variable group (comma-separated)");
    info->add_option("--b", subset.b, "second variable group");
    add_common(info);

    auto* cond = app.add_subcommand("cond-info", "conditional information I*[a;b|c]");
    cond->add_option("--world", subset.world_path)->required();
    cond->add_option("--a", subset.a)->required();
    cond->add_option("--b", subset.b)->required();
    cond->add_option("--c", subset.c)->required();
    add_common(cond);

    auto* part = app.add_subcommand("partition", "overlap partition [[target|cond]]*");
    part->add_option("--world", subset.world_path)->required();
    part->add_option("--target", subset.target)->required();
    part->add_option("--cond", subset.cond)->required();
    part->add_option("--given", subset.given, "restrict to an assignment, e.g. W=a,V=b");
    add_common(part);

    auto* nc = app.add_subcommand("nc-info", "noncooperative information of three groups");
    nc->add_option("--world", subset.world_path)->required();
    nc->add_option("--x1", subset.x1)->required();
    nc->add_option("--x2", subset.x2)->required();
    nc->add_option("--y", subset.y)->required();
    add_common(nc);

    auto* synth = app.add_subcommand("synthesize", "build a zero-error code from a structure");
    synth->add_option("--channel", chopt.channel_path)->required();
    synth->add_option("--structure", chopt.structure_path)->required();
    synth->add_option("--world-cap", chopt.world_cap);
    add_common(synth);

    auto* verify = app.add_subcommand("verify", "exhaustively verify a code is zero-error");
    verify->add_option("--channel", chopt.channel_path)->required();
    verify->add_option("--code", chopt.code_path)->required();
    verify->add_option("--world-cap", chopt.world_cap);
    add_common(verify);

    std::uint64_t max_u_flag = 0, max_set_flag = 0, mu0_flag = 0, mu1_flag = 0, mu2_flag = 0;
    auto* region = app.add_subcommand("region", "zero-error capacity region at blocklength n");
    region->add_option("--channel", chopt.channel_path)->required();
    region->add_option("--n", chopt.n)->required();
    auto* mu_opt = region->add_option("--max-u", max_u_flag, "bound on |U|");
    auto* ms_opt = region->add_option("--max-set-size", max_set_flag, "bound on |A_u|, |B_u|");
    region->add_option("--budget", chopt.budget, "structure census budget");
    region->add_option("--world-cap", chopt.world_cap);
    region->add_option("--threads", chopt.threads);
    region->add_option("--format", chopt.format)->check(CLI::IsMember({"structured", "csv"}));
    add_common(region);

    auto* oracle = app.add_subcommand("oracle-region",
                                      "region by exhaustive encoder search (ground truth)");
    oracle->add_option("--channel", chopt.channel_path)->required();
    oracle->add_option("--n", chopt.n)->required();
    auto* o0 = oracle->add_option("--mu0", mu0_flag, "bound on the common message count");
    auto* o1 = oracle->add_option("--mu1", mu1_flag);
    auto* o2 = oracle->add_option("--mu2", mu2_flag);
    oracle->add_option("--node-budget", chopt.node_budget);
    oracle->add_option("--threads", chopt.threads);
    oracle->add_option("--format", chopt.format)->check(CLI::IsMember({"structured", "csv"}));
    add_common(oracle);

    auto* single = app.add_subcommand("single-user", "single-user zero-error capacity");
    single->add_option("--channel", chopt.channel_path)->required();
    single->add_option("--n", chopt.n)->required();
    single->add_option("--node-budget", chopt.node_budget);
    add_common(single);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : 1;
    }

    if (mu_opt->count() > 0) chopt.max_u = max_u_flag;
    if (ms_opt->count() > 0) chopt.max_set_size = max_set_flag;
    if (o0->count() > 0) chopt.mu0 = mu0_flag;
    if (o1->count() > 0) chopt.mu1 = mu1_flag;
    if (o2->count() > 0) chopt.mu2 = mu2_flag;

    try {
        if (chopt.n < 1) throw zemac::ValidationError("blocklength must be at least 1");
        return run(app.get_subcommands().front()->get_name(), common, subset, chopt);
    } catch (const zemac::BudgetExceededError& e) {
        std::cerr << "budget exceeded: " << e.what() << '\n';
        return 2;
    } catch (const zemac::InternalCheckError& e) {
        std::cerr << "internal check failed: " << e.what() << '\n';
        return 3;
    } catch (const zemac::ValidationError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "internal error: " << e.what() << '\n';
        return 3;
    }
}
