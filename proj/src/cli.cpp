/* Copyright 2026 The strucheck Authors. All Rights Reserved.

Licensed under the Apache License, Version 2.0 (the "License");
you may not use this file except in compliance with the License.
You may obtain a copy of the License at

    http://www.apache.org/licenses/LICENSE-2.0

Unless required by applicable law or agreed to in writing, software
distributed under the License is distributed on an "AS IS" BASIS,
WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
See the License for the specific language governing permissions and
limitations under the License.
==============================================================================*/

#include "strucheck/cli.hpp"

#include <algorithm>
#include <fstream>
#include <set>
#include <sstream>

#ifdef STRUCHECK_CLI11_PACKAGE
#include <CLI/CLI.hpp>
#else
#include <CLI11.hpp>
#endif

#include "strucheck/cpp_extractor.hpp"
#include "strucheck/report.hpp"
#include "strucheck/rule_catalog.hpp"

namespace strucheck {

namespace {

struct Inputs {
    std::vector<std::string> files;
    std::string facts;
};

struct RuleOptions {
    std::vector<std::string> rules;
    std::vector<std::string> enable;
    std::vector<std::string> disable;
};

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw Error(ErrorCode::Io, "cannot read '" + path + "'");
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

FactBase load_facts(const Inputs& in, std::ostream& err) {
    if (in.files.empty() == in.facts.empty()) {
        throw Error(ErrorCode::Usage, "give either source files or --facts, not both or neither");
    }
    if (!in.facts.empty()) {
        FactBase fb = read_fact_file(read_file(in.facts), in.facts);
        fb.freeze();
        return fb;
    }
    std::vector<SourceFile> sources;
    for (const auto& path : in.files) sources.push_back(SourceFile{path, read_file(path)});
    return extract_project(sources, [&](const std::string& line) { err << line << '\n'; });
}

AssembledProgram load_rules(const RuleOptions& opts) {
    std::vector<Ruleset> rulesets;
    Signatures known = catalog_signatures();
    for (const auto& path : opts.rules) {
        Ruleset rs = parse_ruleset(read_file(path), known, path);
        for (const ClosureDef& c : rs.closures) {
            if (auto base = known.find(c.base); base != known.end()) known.try_emplace(c.name, base->second);
        }
        rulesets.push_back(std::move(rs));
    }

    std::vector<CatalogEntry> catalog = builtin_rules();
    std::set<std::string> all_ids;
    for (const auto& e : catalog) all_ids.insert(e.id);
    for (const auto& rs : rulesets) {
        for (const auto& r : rs.rules) all_ids.insert(r.name);
    }
    for (const auto* list : {&opts.enable, &opts.disable}) {
        for (const auto& id : *list) {
            if (!all_ids.contains(id)) throw Error(ErrorCode::UnknownRuleId, "unknown rule id '" + id + "'");
        }
    }
    auto wanted = [&](const std::string& id) {
        bool listed = opts.enable.empty() ||
                      std::find(opts.enable.begin(), opts.enable.end(), id) != opts.enable.end();
        bool dropped = std::find(opts.disable.begin(), opts.disable.end(), id) != opts.disable.end();
        return listed && !dropped;
    };
    // Selection applies to the builtin catalog; rules loaded with --rules
    // were asked for explicitly and always run.
    for (auto& e : catalog) e.enabled = wanted(e.id);
    return assemble(catalog, rulesets);
}

void add_rule_options(CLI::App* cmd, RuleOptions& opts) {
    cmd->add_option("--rules", opts.rules, "Rule file (repeatable)")->allow_extra_args(false);
    cmd->add_option("--enable", opts.enable, "Run only these rule ids (repeatable)")->allow_extra_args(false);
    cmd->add_option("--disable", opts.disable, "Skip this rule id (repeatable)")->allow_extra_args(false);
}

int cmd_extract(const std::vector<std::string>& files, const std::string& output, std::ostream& out,
                std::ostream& err) {
    FactBase fb = load_facts(Inputs{files, {}}, err);
    std::string text = write_fact_file(fb);
    if (output.empty()) {
        out << text;
    } else {
        std::ofstream file(output, std::ios::binary);
        if (!file || !(file << text)) throw Error(ErrorCode::Io, "cannot write '" + output + "'");
    }
    return kExitClean;
}

int cmd_check(const Inputs& in, const RuleOptions& rule_opts, const std::string& format, bool dedup,
              std::ostream& out, std::ostream& err) {
    FactBase fb = load_facts(in, err);
    AssembledProgram assembled = load_rules(rule_opts);
    Model model = evaluate(assembled.program, fb);
    std::vector<Violation> violations = collect_violations(model, assembled.rules, dedup);
    if (format == "json") {
        std::vector<std::string> ids;
        for (const auto& r : assembled.rules) ids.push_back(r.id);
        std::sort(ids.begin(), ids.end());
        out << render_json(violations, ids);
    } else {
        out << render_text(violations);
    }
    return violations.empty() ? kExitClean : kExitViolations;
}

int cmd_compile_rules(const RuleOptions& rule_opts, std::ostream& out) {
    out << dump_program(load_rules(rule_opts).program);
    return kExitClean;
}

int cmd_facts(const Inputs& in, const RuleOptions& rule_opts, const std::string& predicate, std::ostream& out,
              std::ostream& err) {
    FactBase fb = load_facts(in, err);
    AssembledProgram assembled = load_rules(rule_opts);
    Model model = evaluate(assembled.program, fb);
    std::vector<std::string> lines;
    for (const Tuple& t : query(model, predicate)) lines.push_back(format_fact(fb, predicate, t));
    std::sort(lines.begin(), lines.end());
    for (const auto& line : lines) out << line << '\n';
    return kExitClean;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Checks structural coding rules over C++ class declarations", "strucheck"};
    app.require_subcommand(1);

    std::vector<std::string> extract_files;
    std::string extract_output;
    auto* extract = app.add_subcommand("extract", "Extract facts from source files");
    extract->add_option("files", extract_files, "Source files")->required();
    extract->add_option("-o,--output", extract_output, "Write the fact file here instead of stdout");

    Inputs check_in;
    RuleOptions check_rules;
    std::string format = "text";
    bool dedup = false;
    auto* check = app.add_subcommand("check", "Check source files or a fact file against the rules");
    check->add_option("files", check_in.files, "Source files");
    check->add_option("--facts", check_in.facts, "Fact file to check instead of sources");
    add_rule_options(check, check_rules);
    check->add_option("--format", format, "Report format")->check(CLI::IsMember({"text", "json"}));
    check->add_flag("--dedup-symmetric", dedup, "Report symmetric witness pairs once");

    RuleOptions compile_rules;
    auto* compile_cmd = app.add_subcommand("compile-rules", "Print the assembled clause program");
    add_rule_options(compile_cmd, compile_rules);

    Inputs facts_in;
    RuleOptions facts_rules;
    std::string predicate;
    auto* facts = app.add_subcommand("facts", "Print the extension of one predicate");
    facts->add_option("--query", predicate, "Predicate to print")->required();
    facts->add_option("files", facts_in.files, "Source files");
    facts->add_option("--facts", facts_in.facts, "Fact file");
    add_rule_options(facts, facts_rules);

    std::vector<std::string> reversed(args.rbegin(), args.rend());
    try {
        app.parse(reversed);
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return kExitClean;
    } catch (const CLI::ParseError& e) {
        err << "-:0:0: error: " << e.what() << '\n';
        return kExitError;
    }

    try {
        if (*extract) return cmd_extract(extract_files, extract_output, out, err);
        if (*check) return cmd_check(check_in, check_rules, format, dedup, out, err);
        if (*compile_cmd) return cmd_compile_rules(compile_rules, out);
        if (*facts) return cmd_facts(facts_in, facts_rules, predicate, out, err);
    } catch (const Error& e) {
        err << e.diagnostic() << '\n';
        return kExitError;
    }
    return kExitError;
}

}  // namespace strucheck
