// Command-line front end: generate product-state families, check
// orthogonality and the first-measurement nonlocality criterion, simulate the
// entanglement-assisted discrimination protocol, and scan (n, d) grids.
//
// Exit status: 0 = check passed (certified / perfect / pass), 2 = check ran
// but the property fails, 1 = usage or internal error.

#include <fstream>
#include <iostream>
#include <string>

#include "CLI11.hpp"

#include "locclab/families.hpp"
#include "locclab/locc.hpp"
#include "locclab/opm.hpp"
#include "locclab/reports.hpp"

namespace {

struct Range {
    std::size_t lo = 0;
    std::size_t hi = 0;
};

Range parse_range(const std::string& text) {
    const auto dots = text.find("..");
    Range r;
    if (dots == std::string::npos) {
        r.lo = r.hi = std::stoul(text);
    } else {
        r.lo = std::stoul(text.substr(0, dots));
        r.hi = std::stoul(text.substr(dots + 2));
    }
    if (r.lo > r.hi) throw CLI::ValidationError("range", "lower bound exceeds upper bound");
    return r;
}

int emit(const std::string& payload, const std::string& out_path) {
    if (out_path.empty()) {
        std::cout << payload;
        if (!payload.empty() && payload.back() != '\n') std::cout << '\n';
        return 0;
    }
    std::ofstream out(out_path, std::ios::binary);
    if (!out) {
        std::cerr << "error: cannot open output file '" << out_path << "'\n";
        return 1;
    }
    out << payload;
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"locclab: product-state nonlocality laboratory"};
    app.require_subcommand(1);

    std::string name = "main";
    std::size_t n = 3, d = 3;
    double tol = locclab::kDefaultTol;
    std::string format = "json";
    std::string scan_format = "csv";
    std::string out_path;
    std::string n_range_text = "3..6", d_range_text = "2..6";
    std::size_t max_depth = 8;

    auto add_family_opts = [&](CLI::App* cmd) {
        cmd->add_option("--name", name, "family name: main, example1, basis1, basis2, stopper")
            ->capture_default_str();
        cmd->add_option("--n", n, "party count (main, stopper)")->capture_default_str();
        cmd->add_option("--d", d, "local dimension (main, stopper)")->capture_default_str();
    };
    auto add_io_opts = [&](CLI::App* cmd) {
        cmd->add_option("--format", format, "output format")
            ->check(CLI::IsMember({"json"}))
            ->capture_default_str();
        cmd->add_option("--out", out_path, "output path (default: standard output)");
    };
    auto add_tol_opt = [&](CLI::App* cmd) {
        cmd->add_option("--tol", tol, "solver tolerance")
            ->check(CLI::PositiveNumber)
            ->capture_default_str();
    };

    CLI::App* cmd_family = app.add_subcommand("family", "emit a state family as JSON");
    add_family_opts(cmd_family);
    add_io_opts(cmd_family);

    CLI::App* cmd_ortho = app.add_subcommand("ortho", "check pairwise orthogonality");
    add_family_opts(cmd_ortho);
    add_io_opts(cmd_ortho);

    CLI::App* cmd_nonloc =
        app.add_subcommand("nonlocality", "solve the per-party measurement constraint systems");
    add_family_opts(cmd_nonloc);
    add_tol_opt(cmd_nonloc);
    add_io_opts(cmd_nonloc);

    CLI::App* cmd_protocol = app.add_subcommand(
        "protocol", "simulate the entanglement-assisted discrimination protocol");
    cmd_protocol->add_option("--n", n, "party count")->capture_default_str();
    cmd_protocol->add_option("--d", d, "local dimension")->capture_default_str();
    add_tol_opt(cmd_protocol);
    add_io_opts(cmd_protocol);

    CLI::App* cmd_demo = app.add_subcommand(
        "basis2-demo", "run the basis-2 two-outcome cascade and resolve its leaves");
    cmd_demo->add_option("--max-depth", max_depth, "search depth cap")->capture_default_str();
    add_io_opts(cmd_demo);

    CLI::App* cmd_scan = app.add_subcommand("scan", "grid scan over (n, d)");
    cmd_scan->add_option("--n-range", n_range_text, "party counts, e.g. 3..6")
        ->capture_default_str();
    cmd_scan->add_option("--d-range", d_range_text, "local dimensions, e.g. 2..6")
        ->capture_default_str();
    add_tol_opt(cmd_scan);
    cmd_scan->add_option("--format", scan_format, "output format")
        ->check(CLI::IsMember({"csv", "json"}))
        ->capture_default_str();
    cmd_scan->add_option("--out", out_path, "output path (default: standard output)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 1;  // help/version exit 0, usage errors exit 1
    }

    try {
        if (app.got_subcommand(cmd_family)) {
            const locclab::StateFamily f = locclab::family_by_name(name, n, d);
            return emit(locclab::family_to_json(f), out_path);
        }
        if (app.got_subcommand(cmd_ortho)) {
            const locclab::StateFamily f = locclab::family_by_name(name, n, d);
            const locclab::OrthogonalityReport r = locclab::check_orthogonality(f);
            if (int rc = emit(locclab::ortho_to_json(f, r), out_path)) return rc;
            return r.pass ? 0 : 2;
        }
        if (app.got_subcommand(cmd_nonloc)) {
            const locclab::StateFamily f = locclab::family_by_name(name, n, d);
            const locclab::NonlocalityReport r = locclab::certify(f, tol);
            if (int rc = emit(locclab::nonlocality_to_json(r, f), out_path)) return rc;
            return r.certified ? 0 : 2;
        }
        if (app.got_subcommand(cmd_protocol)) {
            const locclab::StateFamily f = locclab::gen_main_family(n, d);
            const locclab::StateFamily attached = locclab::attach_resource(f, n - 1, n);
            const locclab::ProtocolTree tree = locclab::build_discrimination_protocol(n, d);
            const locclab::DiscriminationReport r = locclab::run_protocol(tree, attached, tol);
            if (int rc = emit(locclab::discrimination_to_json(r, n, d, n - 1, n), out_path)) {
                return rc;
            }
            return r.perfect ? 0 : 2;
        }
        if (app.got_subcommand(cmd_demo)) {
            const locclab::Basis2Split split = locclab::build_basis2_split(max_depth);
            if (int rc = emit(locclab::basis2_split_to_json(split), out_path)) return rc;
            bool ok = split.orthogonality_preserved;
            for (const locclab::SplitLeaf& leaf : split.leaves) {
                const bool all_one =
                    leaf.outcomes[0] == 1 && leaf.outcomes[1] == 1 && leaf.outcomes[2] == 1;
                if (!all_one && !leaf.candidates.empty() && !leaf.resolver) ok = false;
            }
            return ok ? 0 : 2;
        }
        if (app.got_subcommand(cmd_scan)) {
            const Range nr = parse_range(n_range_text);
            const Range dr = parse_range(d_range_text);
            const auto rows = locclab::run_scan(nr.lo, nr.hi, dr.lo, dr.hi, tol);
            const std::string payload =
                scan_format == "csv" ? locclab::scan_to_csv(rows)
                                     : locclab::scan_to_json(rows, tol);
            if (int rc = emit(payload, out_path)) return rc;
            for (const locclab::ScanRow& row : rows) {
                if (!row.certified || !row.protocol_perfect) return 2;
            }
            return 0;
        }
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    }
    return 1;
}
