#include "huto/cli.hpp"

#include <algorithm>
#include <chrono>
#include <fstream>
#include <iomanip>
#include <ostream>
#include <regex>
#include <sstream>

#include <CLI11.hpp>

#include "huto/error.hpp"
#include "huto/schema.hpp"
#include "huto/textio.hpp"
#include "huto/vocab.hpp"

namespace huto {

PartialDate parse_date_argument(std::string_view text) {
    static const std::regex pattern(R"(^(\d{1,4})(?:-(\d{2})(?:-(\d{2})(?:T(\d{2})(?::(\d{2})(?::(\d{2}))?)?)?)?)?$)");
    std::match_results<std::string_view::const_iterator> m;
    if (!std::regex_match(text.begin(), text.end(), m, pattern)) {
        throw Error(ErrorCode::InvalidDate, "expected YYYY[-MM[-DD[THH[:MM[:SS]]]]], got '" + std::string(text) + "'");
    }
    auto field = [&](std::size_t i) -> std::optional<int> {
        if (!m[i].matched) return std::nullopt;
        return std::stoi(m[i].str());
    };
    PartialDate d;
    d.year = *field(1);
    d.month = field(2);
    d.day_of_month = field(3);
    d.hour = field(4);
    d.minute = field(5);
    d.second = field(6);
    validate(d);
    return d;
}

Term parse_iri_argument(std::string_view text) {
    if (text.size() >= 2 && text.front() == '<' && text.back() == '>') {
        text = text.substr(1, text.size() - 2);
    }
    const auto colon = text.find(':');
    if (colon != std::string_view::npos) {
        const std::string prefix(text.substr(0, colon));
        const auto prefixes = default_prefixes();
        auto it = prefixes.find(prefix);
        if (it != prefixes.end() && text.substr(colon + 1, 2) != "//") {
            return Term::iri(it->second + std::string(text.substr(colon + 1)));
        }
        return Term::iri(std::string(text));
    }
    if (text.empty()) throw Error(ErrorCode::InvalidArgument, "empty IRI");
    return Term::iri(std::string(kDataNs) + std::string(text));
}

Session::Session(PartialDate today, bool today_from_clock)
    : today_(std::move(today)), today_from_clock_(today_from_clock) {
    load_schema(store_);
}

FileLoad Session::load_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw Error(ErrorCode::InvalidArgument, "cannot read " + path);
    std::stringstream buffer;
    buffer << in.rdbuf();
    const Document doc = parse(buffer.str());
    FileLoad report{path, doc.triple_count(), load_into(store_, doc)};
    files_.push_back(report);
    return report;
}

FixedPointReport Session::normalize(const std::set<std::string>& skip, std::size_t max_rounds) {
    RunOptions options;
    options.context.today = today_;
    options.max_rounds = max_rounds;
    auto report = run_all(store_, without(default_rules(), skip), options);
    normalized_ = true;
    return report;
}

const Store& Session::queryable() const {
    if (!normalized_ && !allow_unnormalized_) {
        throw Error(ErrorCode::NotNormalized, "queries need a normalized store (or --no-normalize)");
    }
    return store_;
}

QueryOptions Session::query_options() const {
    QueryOptions q;
    q.today = today_;
    return q;
}

namespace {

PartialDate system_today() {
    using namespace std::chrono;
    const year_month_day ymd{floor<days>(system_clock::now())};
    return make_date(static_cast<int>(ymd.year()), static_cast<int>(static_cast<unsigned>(ymd.month())),
                     static_cast<int>(static_cast<unsigned>(ymd.day())));
}

std::string render(const Term& t) { return t.is_iri() ? t.text() : to_string(t); }

/// Rows are tab-joined fields, printed sorted in porcelain mode.
class Table {
public:
    void row(std::vector<std::string> fields) { rows_.push_back(std::move(fields)); }
    bool empty() const { return rows_.empty(); }

    void print(std::ostream& out, bool porcelain) {
        std::sort(rows_.begin(), rows_.end());
        if (porcelain) {
            for (const auto& r : rows_) {
                for (std::size_t i = 0; i < r.size(); ++i) out << (i ? "\t" : "") << r[i];
                out << '\n';
            }
            return;
        }
        std::vector<std::size_t> widths;
        for (const auto& r : rows_) {
            widths.resize(std::max(widths.size(), r.size()));
            for (std::size_t i = 0; i < r.size(); ++i) widths[i] = std::max(widths[i], r[i].size());
        }
        for (const auto& r : rows_) {
            for (std::size_t i = 0; i < r.size(); ++i) {
                if (i + 1 == r.size()) {
                    out << r[i];
                } else {
                    out << std::left << std::setw(static_cast<int>(widths[i] + 2)) << r[i];
                }
            }
            out << '\n';
        }
    }

private:
    std::vector<std::vector<std::string>> rows_;
};

struct Flags {
    std::string today;
    std::vector<std::string> skip;
    bool porcelain = false;
    std::size_t max_rounds = 64;
    std::int64_t horizon = 36600;
    bool no_normalize = false;
    std::vector<std::string> files;
    std::vector<std::string> inputs;
    std::string output;
    // query arguments
    std::string resource;
    std::string every;
    std::string weekday;
    std::string relation;
    std::string date;
    std::string range_begin;
    std::string range_end;
};

/// Error raised while interpreting arguments; maps to the usage exit code.
struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

class Runner {
public:
    Runner(const Flags& flags, std::ostream& out, std::ostream& err) : flags_(flags), out_(out), err_(err) {}

    int load(const std::vector<std::string>& paths, bool print) {
        session_ = std::make_unique<Session>(today(), flags_.today.empty());
        Table table;
        std::set<std::string> seen;
        for (const auto& path : paths) {
            FileLoad f;
            try {
                f = session_->load_file(path);
            } catch (const ParseError& e) {
                err_ << "error: " << path << ":" << e.what() << '\n';
                return kExitUsage;
            } catch (const Error& e) {
                err_ << "error: " << e.what() << '\n';
                return kExitUsage;
            }
            const bool again = !seen.insert(path).second;
            table.row({path, std::to_string(f.parsed), std::to_string(f.added), again ? "reloaded" : "new"});
        }
        if (print) {
            if (!flags_.porcelain) out_ << "file  triples  added  status\n";
            table.print(out_, flags_.porcelain);
        }
        return kExitOk;
    }

    int normalize(bool print) {
        const std::set<std::string> skip(flags_.skip.begin(), flags_.skip.end());
        const auto report = session_->normalize(skip, flags_.max_rounds);
        if (print) print_report(report);
        return kExitOk;
    }

    int write_output() {
        if (flags_.output.empty()) return kExitOk;
        std::ofstream file(flags_.output, std::ios::binary);
        if (!file) {
            err_ << "error: cannot write " << flags_.output << '\n';
            return kExitUsage;
        }
        file << serialize(to_document(session_->store()));
        return kExitOk;
    }

    int check() {
        const auto violations = check_consistency(session_->queryable());
        Table table;
        for (const auto& v : violations) table.row({std::string(to_string(v.kind)), render(v.node), v.detail});
        table.print(out_, flags_.porcelain);
        if (!flags_.porcelain) out_ << violations.size() << " violation(s)\n";
        return violations.empty() ? kExitOk : kExitViolations;
    }

    int temporality() {
        const Term r = parse_iri_argument(flags_.resource);
        Table table;
        for (const auto& d : temporality_of(session_->queryable(), r)) {
            for (const auto& t : d.closure) {
                table.row({render(d.root), render(t.subject), render(t.predicate), render(t.object)});
            }
        }
        table.print(out_, flags_.porcelain);
        return kExitOk;
    }

    int recurring() {
        std::vector<RecurringMatch> matches;
        if (!flags_.weekday.empty()) {
            const auto w = parse_weekday(flags_.weekday);
            if (!w) throw UsageError("unknown weekday '" + flags_.weekday + "'");
            matches = recurring_resources(session_->queryable(), *w);
        } else {
            const auto g = parse_granularity(flags_.every);
            if (!g) throw UsageError("unknown granularity '" + flags_.every + "'");
            matches = recurring_resources(session_->queryable(), *g);
        }
        Table table;
        for (const auto& m : matches) table.row({to_string(m.target), render(m.temporality.root)});
        table.print(out_, flags_.porcelain);
        return kExitOk;
    }

    int relative() {
        AllenKind kind;
        if (flags_.relation == "before") {
            kind = AllenKind::Before;
        } else if (flags_.relation == "after") {
            kind = AllenKind::After;
        } else {
            throw UsageError("relation must be 'before' or 'after'");
        }
        const Term r = parse_iri_argument(flags_.resource);
        Table table;
        for (const Term& x : relative_resources(session_->queryable(), r, kind)) table.row({render(x)});
        table.print(out_, flags_.porcelain);
        return kExitOk;
    }

    int on_date() {
        const PartialDate d = arg_date(flags_.date);
        if (!d.month || !d.day_of_month) throw UsageError("on-date needs YYYY-MM-DD");
        DateQuery q = DateQuery::of(*d.year, *d.month, *d.day_of_month);
        const Weekday computed = q.weekday;
        if (!flags_.weekday.empty()) {
            const auto w = parse_weekday(flags_.weekday);
            if (!w) throw UsageError("unknown weekday '" + flags_.weekday + "'");
            q.weekday = *w;
        }
        const auto matches = TemporalIndex(session_->queryable(), session_->query_options()).on(q);
        if (!flags_.porcelain) out_ << "date " << to_string(d) << " " << weekday_name(computed) << '\n';
        Table table;
        for (const auto& m : matches) table.row({to_string(m.target), std::string(to_string(m.kind)), render(m.root)});
        table.print(out_, flags_.porcelain);
        return kExitOk;
    }

    int in_range() {
        const PartialDate b = arg_date(flags_.range_begin);
        const PartialDate e = arg_date(flags_.range_end);
        const auto targets =
            resources_in_range(session_->queryable(), b, e, flags_.horizon, session_->query_options());
        Table table;
        for (const auto& t : targets) table.row({to_string(t)});
        table.print(out_, flags_.porcelain);
        return kExitOk;
    }

    void print_header() {
        const std::string source = flags_.today.empty() ? "system clock" : "--today";
        if (flags_.porcelain) {
            out_ << "today\t" << to_string(session_->today()) << '\n';
        } else {
            out_ << "today: " << to_string(session_->today()) << " (" << source << ")\n";
        }
    }

    Session& session() { return *session_; }

private:
    PartialDate today() const {
        if (flags_.today.empty()) return system_today();
        const PartialDate d = arg_date(flags_.today);
        if (!d.month || !d.day_of_month) throw UsageError("--today needs YYYY-MM-DD");
        return d;
    }

    static PartialDate arg_date(const std::string& text) {
        try {
            return parse_date_argument(text);
        } catch (const Error& e) {
            throw UsageError(e.what());
        }
    }

    void print_report(const FixedPointReport& r) {
        print_header();
        if (flags_.porcelain) {
            out_ << "triples_before\t" << r.triples_before << '\n'
                 << "triples_after_entailment\t" << r.triples_after_entailment << '\n'
                 << "triples_after\t" << r.triples_after << '\n'
                 << "rounds\t" << r.rounds << '\n';
            for (const auto& [name, n] : r.per_rule_firings) out_ << "firings\t" << name << '\t' << n << '\n';
            return;
        }
        out_ << "triples before:           " << r.triples_before << '\n'
             << "triples after entailment: " << r.triples_after_entailment << '\n'
             << "triples after rules:      " << r.triples_after << '\n'
             << "rounds:                   " << r.rounds << '\n'
             << "firings:\n";
        for (const auto& [name, n] : r.per_rule_firings) {
            out_ << "  " << std::left << std::setw(24) << name << n << '\n';
        }
    }

    const Flags& flags_;
    std::ostream& out_;
    std::ostream& err_;
    std::unique_ptr<Session> session_;
};

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    Flags flags;
    CLI::App app{"Temporal annotation store: load, normalize, check and query HuTO data.", "huto"};
    app.require_subcommand(1);
    app.fallthrough();
    app.add_option("--today", flags.today, "Reference date for generic days (YYYY-MM-DD)");
    app.add_option("--skip-rule", flags.skip, "Rule name or group to leave out (repeatable)");
    app.add_flag("--porcelain", flags.porcelain, "Tab-separated, sorted output");
    app.add_option("--max-rounds", flags.max_rounds, "Round limit for the fixed point")->check(CLI::PositiveNumber);
    app.add_option("--horizon", flags.horizon, "Largest range in days for in-range")->check(CLI::PositiveNumber);
    app.add_flag("--no-normalize", flags.no_normalize, "Query the data as loaded");

    auto* load = app.add_subcommand("load", "Parse files and report triple counts");
    load->add_option("files", flags.files, "Turtle/TriG files")->required();

    auto* normalize = app.add_subcommand("normalize", "Run entailment and rules to a fixed point");
    normalize->add_option("files", flags.files, "Turtle/TriG files")->required();
    normalize->add_option("-o,--output", flags.output, "Write the normalized store as TriG");

    auto* check = app.add_subcommand("check", "Report consistency violations");
    check->add_option("files", flags.files, "Turtle/TriG files")->required();

    auto* query = app.add_subcommand("query", "Run a temporal query");
    query->add_option("-i,--input", flags.inputs, "Turtle/TriG files")->required();
    query->require_subcommand(1);
    auto* temporality = query->add_subcommand("temporality", "Root temporal nodes dating a resource");
    temporality->add_option("resource", flags.resource)->required();
    auto* recurring = query->add_subcommand("recurring", "Resources of unsampled cycles");
    auto* every_opt = recurring->add_option("--every", flags.every, "Frequency granularity");
    auto* weekday_opt = recurring->add_option("--weekday", flags.weekday, "Weekday of the recurrence");
    every_opt->excludes(weekday_opt);
    auto* relative = query->add_subcommand("relative", "Resources before or after a resource");
    relative->add_option("relation", flags.relation, "before | after")->required();
    relative->add_option("resource", flags.resource)->required();
    auto* on_date = query->add_subcommand("on-date", "Resources occurring on a date");
    on_date->add_option("date", flags.date, "YYYY-MM-DD")->required();
    on_date->add_option("--weekday", flags.weekday, "Stated weekday, checked against the date");
    auto* in_range = query->add_subcommand("in-range", "Resources occurring within a range");
    in_range->add_option("begin", flags.range_begin)->required();
    in_range->add_option("end", flags.range_end)->required();

    try {
        std::vector<std::string> reversed(args.rbegin(), args.rend());
        app.parse(reversed);
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return kExitOk;
    } catch (const CLI::CallForAllHelp&) {
        out << app.help("", CLI::AppFormatMode::All);
        return kExitOk;
    } catch (const CLI::ParseError& e) {
        err << "error: " << e.what() << '\n';
        return kExitUsage;
    }
    if (recurring->parsed() && flags.every.empty() && flags.weekday.empty()) {
        err << "error: recurring needs --every or --weekday\n";
        return kExitUsage;
    }

    Runner runner(flags, out, err);
    try {
        const bool is_query = query->parsed();
        const auto& files = is_query ? flags.inputs : flags.files;
        if (int rc = runner.load(files, load->parsed()); rc != kExitOk || load->parsed()) return rc;

        if (normalize->parsed()) {
            runner.normalize(true);
            return runner.write_output();
        }
        if (flags.no_normalize) {
            runner.session().allow_unnormalized();
        } else {
            runner.normalize(false);
        }
        if (check->parsed()) return runner.check();
        if (temporality->parsed()) return runner.temporality();
        if (recurring->parsed()) return runner.recurring();
        if (relative->parsed()) return runner.relative();
        if (on_date->parsed()) return runner.on_date();
        if (in_range->parsed()) return runner.in_range();
        err << "error: no command\n";
        return kExitUsage;
    } catch (const UsageError& e) {
        err << "error: " << e.what() << '\n';
        return kExitUsage;
    } catch (const Error& e) {
        err << "error: " << to_string(e.code()) << ": " << e.what() << '\n';
        switch (e.code()) {
            case ErrorCode::InvalidDate:
            case ErrorCode::RangeTooLarge:
            case ErrorCode::Underspecified:
            case ErrorCode::InvalidArgument:
                return kExitUsage;
            default:
                return kExitEngine;
        }
    }
}

}  // namespace huto
