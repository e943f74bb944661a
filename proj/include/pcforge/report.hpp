#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace pcforge {

  enum class CheckStatus { pass, fail, skip };

  struct CheckLine {
    std::string id;
    CheckStatus status = CheckStatus::pass;
    std::string detail;
    double      seconds = 0;
  };

  struct Attachment {
    std::string name;
    std::string text;
  };

  struct Report {
    std::string             invocation;
    std::vector<CheckLine>  lines;
    std::vector<Attachment> attachments;
    double                  seconds = 0;

    void add(std::string id, bool ok, std::string detail, double seconds = 0);
    void skip(std::string id, std::string reason, double seconds = 0);
    void append(Report const& other);

    std::size_t count(CheckStatus s) const;
    bool        ok() const {
      return count(CheckStatus::fail) == 0;
    }
  };

  char const* status_name(CheckStatus s);

  enum class ReportFormat { text, json_lines };

  struct ReportStyle {
    ReportFormat format      = ReportFormat::text;
    bool         timing      = false;  // wall-clock makes output nondeterministic
    bool         attachments = false;
  };

  // Text: one `CHECK <id> <PASS|FAIL|SKIP> <detail>` line per check after a
  // `# <invocation>` header. JSON lines: one object per check.
  std::string format_report(Report const& r, ReportStyle const& style = {});

}  // namespace pcforge
