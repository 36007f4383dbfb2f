// Command-line driver.  Loads a workspace document, runs one command
// against it, and reports on stdout in text or JSON.  Exit codes: 0 when
// the answer is "holds", 1 when it is "fails", 2 for invalid input of any
// kind, 3 when a search budget ran out and only partial results exist.

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include <qkan/verify.hpp>

namespace {

int exit_code(qkan::Outcome o) {
    switch (o) {
        case qkan::Outcome::holds: return 0;
        case qkan::Outcome::fails: return 1;
        default: return 3;
    }
}

void render(const qkan::Verdict& v, const std::string& format) {
    if (format == "json")
        std::cout << qkan::verdict_json(v).dump(2) << "\n";
    else
        std::cout << qkan::verdict_text(v);
}

int report_error(const std::string& cls, const std::string& what, const std::string& format) {
    if (format == "json")
        std::cout << qkan::json{{"error", what}, {"class", cls}}.dump(2) << "\n";
    else
        std::cerr << "error (" << cls << "): " << what << "\n";
    return 2;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"finite enriched-category toolkit: checks, fixed points, bounded sweeps"};
    app.require_subcommand(1);

    std::string input, format = "text";
    int max_objects = 2;
    long long budget = -1;
    app.add_option("-i,--input", input, "workspace document to load")->required();
    app.add_option("--format", format, "report format")
        ->check(CLI::IsMember({"text", "json"}));
    app.add_option("--max-objects", max_objects, "size cap for generated categories")
        ->check(CLI::Range(1, 8));
    app.add_option("--budget", budget, "candidate cap for generated sweeps");

    auto* check = app.add_subcommand("check", "decide a structural property");
    check->fallthrough();
    std::string what, target;
    check->add_option("what", what, "property to decide")
        ->required()
        ->check(CLI::IsMember({"regular", "ccd", "opccd", "complete", "girard"}));
    check->add_option("target", target, "entity to examine (or kphi:<dist>)");

    auto* kphi_cmd = app.add_subcommand("kphi", "fixed points of a distributor");
    kphi_cmd->fallthrough();
    std::string dist, dot_path;
    kphi_cmd->add_option("dist", dist, "distributor name")->required();
    kphi_cmd->add_option("--emit-dot", dot_path, "also write the underlying order as DOT");

    auto* verify_cmd = app.add_subcommand("verify", "quantify a named fact within bounds");
    verify_cmd->fallthrough();
    std::string fact;
    verify_cmd->add_option("id", fact, "which fact")->required();

    auto* mine_cmd = app.add_subcommand("mine", "search for counterexamples to an implication");
    mine_cmd->fallthrough();
    int implication = 0;
    mine_cmd->add_option("--implication", implication, "which implication, 1 to 5")
        ->required()
        ->check(CLI::Range(1, 5));

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    qkan::Bounds bounds;
    bounds.max_objects = max_objects;
    if (budget < 0)
        if (const char* env = std::getenv("QKAN_BUDGET")) budget = std::atoll(env);
    if (budget >= 0) {
        bounds.presheaf_budget = budget;
        bounds.dist_budget = budget;
    }

    std::ifstream in(input);
    if (!in) return report_error("io", "cannot open " + input, format);
    std::stringstream text;
    text << in.rdbuf();

    std::vector<std::string> tokens;
    if (*check) {
        tokens = {"check", what};
        if (!target.empty()) tokens.push_back(target);
    } else if (*kphi_cmd) {
        tokens = {"kphi", dist};
    } else if (*verify_cmd) {
        tokens = {"verify", fact};
    } else {
        tokens = {"mine", std::to_string(implication)};
    }

    try {
        qkan::Workspace ws = qkan::parse_workspace(text.str());
        qkan::Verdict v = qkan::run_check(ws, tokens, bounds);
        if (*kphi_cmd && !dot_path.empty()) {
            std::ofstream dot(dot_path);
            if (!dot) return report_error("io", "cannot write " + dot_path, format);
            dot << qkan::kphi_dot(qkan::kphi(ws.distributor(dist), bounds.presheaf_budget));
        }
        render(v, format);
        return exit_code(v.result);
    } catch (const qkan::budget_error& e) {
        qkan::Verdict v;
        for (const auto& t : tokens) v.id += (v.id.empty() ? "" : " ") + t;
        v.result = qkan::Outcome::budget_exceeded;
        v.notes.push_back(std::string(e.what()) + " (" + std::to_string(e.count) +
                          " candidates); partial results only");
        render(v, format);
        return 3;
    } catch (const qkan::workspace_error& e) {
        return report_error("workspace", e.what(), format);
    } catch (const qkan::internal_error& e) {
        return report_error("internal", e.what(), format);
    } catch (const qkan::type_error& e) {
        return report_error("type", e.what(), format);
    } catch (const qkan::structure_error& e) {
        return report_error("structure", e.what(), format);
    } catch (const qkan::error& e) {
        return report_error("error", e.what(), format);
    }
}
