// Copyright 2026 The PPPM Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "cli.hpp"

#include <CLI11.hpp>

#include <fstream>
#include <map>
#include <optional>
#include <sstream>

#include "pppm/analysis.hpp"
#include "pppm/dsl.hpp"
#include "pppm/query.hpp"
#include "pppm/render.hpp"

namespace pppm::cli {
namespace {

// Carries an exit code out of a subcommand.
struct Exit {
  int code;
};

class Session {
 public:
  Session(std::ostream& out, std::ostream& err, bool styled)
      : out_(out), err_(err), styled_(styled) {}

  int check(const std::string& file) {
    PolicyModel m = load(file);
    out_ << file << ": ok (" << m.roles.size() << " roles, "
         << m.purposes.size() << " purposes, " << m.attributes.size()
         << " attributes, " << m.tasks.size() << " tasks)\n";
    return kSuccess;
  }

  int lint(const std::string& file, const std::vector<std::string>& rules,
           const std::vector<std::string>& severity_overrides,
           bool deny_warnings, const std::string& format) {
    std::map<std::string, Severity> overrides;
    for (const auto& item : severity_overrides) {
      auto eq = item.find('=');
      if (eq == std::string::npos) {
        usage("--severity expects RULE=LEVEL, got '" + item + "'");
      }
      overrides[item.substr(0, eq)] = parse_severity(item.substr(eq + 1));
    }
    LintConfig config = LintConfig::make(rules, overrides);
    PolicyModel m = load(file);
    auto findings = run_lints(m, config);
    out_ << (format == "tsv" ? format_findings_tsv(findings)
                             : format_findings_text(findings, styled_));
    for (const auto& f : findings) {
      if (f.severity == Severity::kError ||
          (deny_warnings && f.severity == Severity::kWarning)) {
        return kLintErrors;
      }
    }
    return kSuccess;
  }

  int query(const std::string& file, const std::string& role,
            const std::string& attribute, const std::optional<std::string>& purpose,
            const std::vector<std::string>& bindings) {
    EvalContext ctx;
    for (const auto& b : bindings) {
      auto eq = b.find('=');
      if (eq == std::string::npos || eq == 0) {
        usage("--ctx expects name=value, got '" + b + "'");
      }
      ctx.bind(b.substr(0, eq), parse_value(b.substr(eq + 1)));
    }
    PolicyModel m = load(file);
    Decision d = can_access(m, role, attribute, purpose, ctx);
    for (const auto& line : describe(m, d)) out_ << line << "\n";
    return kSuccess;
  }

  int render(const std::string& file, const std::string& layers,
             const std::string& out_path, bool no_legend, bool no_clusters) {
    RenderOptions opts;
    opts.layers = parse_layers(layers);
    opts.show_legend = !no_legend;
    opts.cluster_groups = !no_clusters;
    PolicyModel m = load(file);
    emit(emit_graph(m, opts), out_path);
    return kSuccess;
  }

  int report(const std::string& file, const std::string& out_path) {
    PolicyModel m = load(file);
    emit(emit_tables(m), out_path);
    return kSuccess;
  }

 private:
  [[noreturn]] void usage(const std::string& message) {
    err_ << "pppm: error: " << message << "\n";
    throw Exit{kUsageError};
  }

  PolicyModel load(const std::string& file) {
    std::ifstream in(file, std::ios::binary);
    if (!in) usage("cannot read '" + file + "'");
    std::ostringstream buf;
    buf << in.rdbuf();
    try {
      return load_policy(buf.str(), file);
    } catch (const ParseError& e) {
      err_ << e.what() << "\n";
      if (!e.expected().empty()) err_ << "  expected: " << e.expected() << "\n";
      throw Exit{kParseError};
    } catch (const LoweringError& e) {
      for (const auto& d : e.diagnostics()) {
        err_ << format_location(e.file(), d.span) << ": error[" << d.rule
             << "]: " << d.message << "\n";
      }
      throw Exit{kValidationErrors};
    }
  }

  void emit(const std::string& text, const std::string& path) {
    if (path.empty()) {
      out_ << text;
      return;
    }
    std::ofstream file(path, std::ios::binary | std::ios::trunc);
    if (!file) usage("cannot write '" + path + "'");
    file << text;
    file.close();
    if (!file) usage("failed writing '" + path + "'");
  }

  std::ostream& out_;
  std::ostream& err_;
  bool styled_;
};

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out,
        std::ostream& err, bool styled) {
  CLI::App app{"Privacy policy permission model checker, linter and renderer",
               "pppm"};
  app.require_subcommand(1);

  std::string file;
  auto* check = app.add_subcommand("check", "Parse and validate a policy file");
  check->add_option("file", file, "Policy file")->required();

  auto* lint = app.add_subcommand("lint", "Run the gap-analysis lints");
  std::vector<std::string> rules, severities;
  bool deny_warnings = false;
  std::string format = "text";
  lint->add_option("file", file, "Policy file")->required();
  lint->add_option("--rules", rules, "Rules to run (ids or names)")->delimiter(',');
  lint->add_option("--severity", severities, "Severity override RULE=LEVEL");
  lint->add_flag("--deny-warnings", deny_warnings, "Fail on warnings too");
  lint->add_option("--format", format, "Output format")
      ->check(CLI::IsMember({"text", "tsv"}));

  auto* query = app.add_subcommand("query", "Decide whether a role may access an attribute");
  std::string role, attribute, purpose;
  std::vector<std::string> bindings;
  query->add_option("file", file, "Policy file")->required();
  query->add_option("--role", role, "Role id")->required();
  query->add_option("--attribute", attribute, "Attribute id")->required();
  query->add_option("--purpose", purpose, "Purpose id (default: any)");
  query->add_option("--ctx", bindings, "Context binding name=value");

  auto* render = app.add_subcommand("render", "Emit the permission diagram as DOT");
  std::string layers = "all", out_path;
  bool no_legend = false, no_clusters = false;
  render->add_option("file", file, "Policy file")->required();
  render->add_option("--layers", layers, "Comma-separated layers");
  render->add_option("--out", out_path, "Output file (default stdout)");
  render->add_flag("--no-legend", no_legend, "Omit legend nodes");
  render->add_flag("--no-group-clusters", no_clusters,
                   "Draw groups as nodes instead of clusters");

  auto* report = app.add_subcommand("report", "Emit the component and permission tables");
  report->add_option("file", file, "Policy file")->required();
  report->add_option("--out", out_path, "Output file (default stdout)");

  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kSuccess;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kSuccess;
  } catch (const CLI::ParseError& e) {
    err << "pppm: error: " << e.what() << "\n";
    return kUsageError;
  }

  Session session(out, err, styled);
  try {
    if (*check) return session.check(file);
    if (*lint) {
      return session.lint(file, rules, severities, deny_warnings, format);
    }
    if (*query) {
      std::optional<std::string> p;
      if (query->count("--purpose")) p = purpose;
      return session.query(file, role, attribute, p, bindings);
    }
    if (*render) {
      return session.render(file, layers, out_path, no_legend, no_clusters);
    }
    if (*report) return session.report(file, out_path);
  } catch (const Exit& e) {
    return e.code;
  } catch (const PreconditionError& e) {
    err << "pppm: error: " << e.what() << "\n";
    return kValidationErrors;
  } catch (const Error& e) {
    // LookupError, ConfigError, EvaluationError: bad ids or flags.
    err << "pppm: error: " << e.what() << "\n";
    return kUsageError;
  }
  return kUsageError;
}

}  // namespace pppm::cli
