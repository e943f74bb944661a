#include "pcforge/report.hpp"

#include <algorithm>
#include <cstdio>
#include <sstream>

#include "json.hpp"

namespace pcforge {

  void Report::add(std::string id, bool ok, std::string detail, double secs) {
    lines.push_back({std::move(id), ok ? CheckStatus::pass : CheckStatus::fail,
                     std::move(detail), secs});
  }

  void Report::skip(std::string id, std::string reason, double secs) {
    lines.push_back({std::move(id), CheckStatus::skip, std::move(reason), secs});
  }

  void Report::append(Report const& other) {
    lines.insert(lines.end(), other.lines.begin(), other.lines.end());
    attachments.insert(attachments.end(), other.attachments.begin(), other.attachments.end());
    seconds += other.seconds;
  }

  std::size_t Report::count(CheckStatus s) const {
    return static_cast<std::size_t>(
        std::count_if(lines.begin(), lines.end(), [s](auto const& l) { return l.status == s; }));
  }

  char const* status_name(CheckStatus s) {
    switch (s) {
      case CheckStatus::pass:
        return "PASS";
      case CheckStatus::fail:
        return "FAIL";
      case CheckStatus::skip:
        return "SKIP";
    }
    return "?";
  }

  namespace {

    std::string seconds_text(double s) {
      char buf[32];
      std::snprintf(buf, sizeof buf, "%.3fs", s);
      return buf;
    }

  }  // namespace

  std::string format_report(Report const& r, ReportStyle const& style) {
    std::ostringstream os;
    if (style.format == ReportFormat::json_lines) {
      for (auto const& l : r.lines) {
        nlohmann::ordered_json j;
        j["id"]     = l.id;
        j["status"] = status_name(l.status);
        j["detail"] = l.detail;
        if (style.timing) {
          j["seconds"] = l.seconds;
        }
        os << j.dump() << '\n';
      }
      if (style.attachments) {
        for (auto const& a : r.attachments) {
          nlohmann::ordered_json j;
          j["attachment"] = a.name;
          j["text"]       = a.text;
          os << j.dump() << '\n';
        }
      }
      nlohmann::ordered_json s;
      s["summary"] = {{"pass", r.count(CheckStatus::pass)},
                      {"fail", r.count(CheckStatus::fail)},
                      {"skip", r.count(CheckStatus::skip)}};
      if (style.timing) {
        s["seconds"] = r.seconds;
      }
      os << s.dump() << '\n';
      return os.str();
    }
    if (!r.invocation.empty()) {
      os << "# " << r.invocation << '\n';
    }
    for (auto const& l : r.lines) {
      os << "CHECK " << l.id << ' ' << status_name(l.status) << ' ' << l.detail;
      if (style.timing) {
        os << " [" << seconds_text(l.seconds) << ']';
      }
      os << '\n';
    }
    if (style.attachments) {
      for (auto const& a : r.attachments) {
        os << "# attachment " << a.name << '\n' << a.text;
        if (!a.text.empty() && a.text.back() != '\n') {
          os << '\n';
        }
      }
    }
    os << "# summary pass=" << r.count(CheckStatus::pass) << " fail=" << r.count(CheckStatus::fail)
       << " skip=" << r.count(CheckStatus::skip);
    if (style.timing) {
      os << " time=" << seconds_text(r.seconds);
    }
    os << '\n';
    return os.str();
  }

}  // namespace pcforge
