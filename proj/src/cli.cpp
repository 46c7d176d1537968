#include "lish/cli.hpp"

#include <cstdlib>
#include <fstream>
#include <sstream>

#include <CLI11.hpp>

#include "lish/codec.hpp"
#include "lish/edit.hpp"
#include "lish/error.hpp"
#include "lish/governance.hpp"
#include "lish/layout.hpp"
#include "lish/validate.hpp"

namespace lish::cli {

namespace {

struct Failure {
    int code;
    std::string message;
};

class Session {
public:
    Session(std::string_view input, const Environment& env) : input_(input), env_(env) {}

    std::string read(const std::string& file) const {
        if (file == "-") return std::string(input_);
        std::ifstream in(file, std::ios::binary);
        if (!in) throw Failure{ExitCode::usage, "cannot read " + file};
        std::ostringstream ss;
        ss << in.rdbuf();
        return ss.str();
    }

    ParsedDocument load(const std::string& file) const {
        ParsedDocument parsed = parse_json(read(file));
        if (env_.mode) {
            auto mode = parse_mode(*env_.mode);
            if (!mode) throw Failure{ExitCode::usage, "LISH_MODE must be strict or relaxed"};
            parsed.doc.mode = *mode;
            parsed.report = validate(parsed.doc);
        }
        return parsed;
    }

    Document load_valid(const std::string& file, std::string& err) const {
        auto parsed = load(file);
        if (!parsed.report.ok()) {
            for (const auto& v : parsed.report.violations) err += describe(v) + "\n";
            throw Failure{ExitCode::invalid, file + " is not a valid lish"};
        }
        return std::move(parsed.doc);
    }

private:
    std::string_view input_;
    const Environment& env_;
};

char single_char(const std::string& s, const char* what) {
    if (s == "\\t") return '\t';
    if (s.size() != 1) throw Failure{ExitCode::usage, std::string(what) + " must be a single character"};
    return s.front();
}

} // namespace

Environment Environment::from_process() {
    Environment env;
    if (const char* mode = std::getenv("LISH_MODE"); mode && *mode) env.mode = mode;
    return env;
}

Result run(const std::vector<std::string>& args, std::string_view input, const Environment& env) {
    Result result;
    Session session(input, env);

    CLI::App app{"Validate, render, query and edit lish documents", "lish"};
    app.require_subcommand(1);

    std::string file, path_text, script, sel_text, delimiter = ",", quote = "\"", orient = "rows";
    std::size_t width = 0;
    int gap = 1;
    bool header = false;

    auto* validate_cmd = app.add_subcommand("validate", "Check a document; print one line per violation");
    auto* fmt_cmd = app.add_subcommand("fmt", "Print the canonical JSON form");
    auto* import_cmd = app.add_subcommand("import-csv", "Convert CSV to a lish document");
    auto* render_cmd = app.add_subcommand("render", "Draw the document as monospace text");
    auto* governed_cmd = app.add_subcommand("governed", "Cells governed by a marginal cell");
    auto* margins_cmd = app.add_subcommand("margins", "Margins governing a body cell");
    auto* formula_cmd = app.add_subcommand("formula", "Effective formula of a body cell");
    auto* apply_cmd = app.add_subcommand("apply", "Apply an edit script and print the result");
    auto* layout_cmd = app.add_subcommand("layout", "Print cell placements as JSON");
    auto* select_cmd = app.add_subcommand("select", "Cells covered by a selection");

    for (auto* sub : {validate_cmd, fmt_cmd, import_cmd, render_cmd, governed_cmd, margins_cmd, formula_cmd,
                      apply_cmd, layout_cmd, select_cmd})
        sub->add_option("file", file, "Input file, or - for stdin")->required();
    for (auto* sub : {governed_cmd, margins_cmd, formula_cmd})
        sub->add_option("--path", path_text, "Comma-separated indices; empty for the root")->required();
    import_cmd->add_option("--delimiter", delimiter, "Field delimiter");
    import_cmd->add_option("--quote", quote, "Quote character");
    import_cmd->add_flag("--header", header, "First record holds column labels");
    render_cmd->add_option("--width", width, "Maximum cell width");
    for (auto* sub : {render_cmd, layout_cmd}) {
        sub->add_option("--root-orientation", orient, "rows or cols")->check(CLI::IsMember({"rows", "cols"}));
        sub->add_option("--gap", gap, "Tracks between independent top-level lishes")->check(CLI::NonNegativeNumber);
    }
    apply_cmd->add_option("--script", script, "JSON array of edit commands")->required();
    select_cmd->add_option("--sel", sel_text, "Selection JSON")->required();

    try {
        std::vector<std::string> reversed(args.rbegin(), args.rend());
        app.parse(reversed);
    } catch (const CLI::CallForHelp&) {
        result.out = app.help();
        return result;
    } catch (const CLI::ParseError& e) {
        result.err = e.what() + std::string("\n") + app.help();
        result.code = ExitCode::usage;
        return result;
    }

    auto layout_options = [&] {
        LayoutOptions o;
        o.root_orientation = orient == "cols" ? Orientation::columns : Orientation::rows;
        o.gap = gap;
        return o;
    };

    try {
        if (validate_cmd->parsed()) {
            auto parsed = session.load(file);
            for (const auto& v : parsed.report.violations) result.out += describe(v) + "\n";
            result.code = parsed.report.ok() ? ExitCode::ok : ExitCode::invalid;
        } else if (fmt_cmd->parsed()) {
            auto parsed = session.load(file);
            result.out = serialize_json(parsed.doc) + "\n";
            for (const auto& v : parsed.report.violations) result.err += describe(v) + "\n";
            result.code = parsed.report.ok() ? ExitCode::ok : ExitCode::invalid;
        } else if (import_cmd->parsed()) {
            CsvDialect dialect{single_char(delimiter, "--delimiter"), single_char(quote, "--quote"), header};
            result.out = serialize_json(import_csv(session.read(file), dialect)) + "\n";
        } else if (render_cmd->parsed()) {
            auto doc = session.load_valid(file, result.err);
            auto placements = compute_layout(doc, layout_options());
            RenderOptions ropts;
            ropts.max_width = width;
            result.out = render_text(placements, doc, ropts);
        } else if (layout_cmd->parsed()) {
            auto doc = session.load_valid(file, result.err);
            result.out = dump(placements_to_json(compute_layout(doc, layout_options()))) + "\n";
        } else if (governed_cmd->parsed()) {
            auto doc = session.load_valid(file, result.err);
            result.out = dump(paths_to_json(governed_set(doc, LishPath::parse(path_text)))) + "\n";
        } else if (margins_cmd->parsed()) {
            auto doc = session.load_valid(file, result.err);
            result.out = dump(paths_to_json(governing_margins(doc, LishPath::parse(path_text)))) + "\n";
        } else if (formula_cmd->parsed()) {
            auto doc = session.load_valid(file, result.err);
            result.out = dump(resolution_to_json(effective_formula(doc, LishPath::parse(path_text)))) + "\n";
        } else if (select_cmd->parsed()) {
            auto doc = session.load_valid(file, result.err);
            Json sel;
            try {
                sel = Json::parse(sel_text);
            } catch (const nlohmann::json::exception& e) {
                throw SchemaError(e.what(), "");
            }
            result.out = dump(paths_to_json(selection_cells(doc, selection_from_json(sel)))) + "\n";
        } else if (apply_cmd->parsed()) {
            auto doc = session.load_valid(file, result.err);
            Json script_json;
            try {
                script_json = Json::parse(session.read(script));
            } catch (const nlohmann::json::exception& e) {
                throw SchemaError(e.what(), "");
            }
            auto edited = apply_all(doc, commands_from_json(script_json));
            for (const auto& d : edited.diagnostics) result.err += "warning: " + d + "\n";
            result.out = serialize_json(edited.doc) + "\n";
        }
    } catch (const Failure& f) {
        result.err += f.message + "\n";
        result.code = f.code;
    } catch (const ValidationError& e) {
        for (const auto& v : e.report.violations) result.err += describe(v) + "\n";
        result.err += std::string(e.what()) + "\n";
        result.code = ExitCode::invalid;
    } catch (const PolicyError& e) {
        result.err += std::string(e.what()) + "\n";
        result.code = ExitCode::invalid;
    } catch (const Error& e) {
        result.err += std::string(e.what()) + "\n";
        result.code = ExitCode::usage;
    }
    if (result.code != ExitCode::ok && result.code != ExitCode::invalid) result.out.clear();
    return result;
}

} // namespace lish::cli
