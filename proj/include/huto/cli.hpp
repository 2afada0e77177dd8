#pragma once

#include <cstddef>
#include <iosfwd>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "huto/model.hpp"
#include "huto/query.hpp"
#include "huto/rules.hpp"
#include "huto/store.hpp"

namespace huto {

/// Stable exit codes of the command-line tool.
enum ExitCode : int {
    kExitOk = 0,
    kExitViolations = 1,
    kExitUsage = 2,
    kExitEngine = 3,
};

/// Parses YYYY[-MM[-DD[THH[:MM[:SS]]]]]; throws Error(InvalidDate).
PartialDate parse_date_argument(std::string_view text);

/// Accepts `<iri>`, `prefix:local` for the default prefixes, absolute IRIs and bare data names.
Term parse_iri_argument(std::string_view text);

struct FileLoad {
    std::string path;
    std::size_t parsed = 0;
    std::size_t added = 0;
};

/// One CLI invocation: the store, what was loaded into it and whether rules have run.
class Session {
public:
    explicit Session(PartialDate today, bool today_from_clock = false);

    /// Throws ParseError on bad syntax and Error(InvalidArgument) when the file cannot be read.
    FileLoad load_file(const std::string& path);
    FixedPointReport normalize(const std::set<std::string>& skip = {}, std::size_t max_rounds = 64);

    /// Lifts the normalization requirement for queries.
    void allow_unnormalized() noexcept { allow_unnormalized_ = true; }
    bool normalized() const noexcept { return normalized_; }

    /// Throws Error(NotNormalized) unless normalize ran or the requirement was lifted.
    const Store& queryable() const;

    Store& store() noexcept { return store_; }
    const PartialDate& today() const noexcept { return today_; }
    bool today_from_clock() const noexcept { return today_from_clock_; }
    const std::vector<FileLoad>& files() const noexcept { return files_; }
    QueryOptions query_options() const;

private:
    Store store_;
    std::vector<FileLoad> files_;
    bool normalized_ = false;
    bool allow_unnormalized_ = false;
    PartialDate today_;
    bool today_from_clock_ = false;
};

/// Runs the tool with `args` excluding the program name; returns the exit code.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace huto
