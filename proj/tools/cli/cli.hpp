#pragma once

#include "hhm/mackey.hpp"

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

namespace hhm::cli {

enum class Format { Text, Json };

struct RunConfig {
    std::string spec_path;
    std::size_t degree = 3;
    std::string subgroups = "all";
    std::string axioms = "i,ii,iii,iv,v,vi";
    std::string cases = "a,b,c";
    Format format = Format::Text;
    std::uint64_t seed = 0;
    std::size_t memory_mb = 2048;
};

/// "all" or semicolon-separated generator lists ("1;2,3"). Throws ParseError.
std::vector<Subgroup> parse_subgroups(const GroupPtr& group, const std::string& selection);
/// Comma-separated axiom ids. Throws ParseError.
std::vector<Axiom> parse_axioms(const std::string& list);

int cmd_info(const RunConfig& cfg, std::ostream& out);
int cmd_hh(const RunConfig& cfg, std::ostream& out);
int cmd_verify(const RunConfig& cfg, std::ostream& out);
int cmd_lemma2(const RunConfig& cfg, std::ostream& out);

/// Parses arguments and dispatches; returns the process exit code (0 pass, 1 check failed,
/// 2 operational error).
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

} // namespace hhm::cli
