#pragma once

#include <sstream>
#include <string>
#include <vector>

namespace dgt {

enum class CheckStatus { Pass, Fail, Warn };

struct CheckEntry {
    std::string name;
    std::string level;  // module-iso | quasi-iso | exactness | axiom
    CheckStatus status = CheckStatus::Pass;
    std::string witness;
};

struct Report {
    std::vector<CheckEntry> entries;

    void add(const std::string& name, const std::string& level, bool pass,
             const std::string& witness = "") {
        entries.push_back({name, level, pass ? CheckStatus::Pass : CheckStatus::Fail, witness});
    }
    void warn(const std::string& name, const std::string& level,
              const std::string& witness = "") {
        entries.push_back({name, level, CheckStatus::Warn, witness});
    }
    void append(const Report& o) {
        entries.insert(entries.end(), o.entries.begin(), o.entries.end());
    }

    bool ok() const {
        for (const auto& e : entries)
            if (e.status == CheckStatus::Fail) return false;
        return true;
    }

    std::string render() const {
        std::ostringstream os;
        for (const auto& e : entries) {
            const char* s = e.status == CheckStatus::Pass   ? "PASS"
                            : e.status == CheckStatus::Fail ? "FAIL"
                                                            : "WARN";
            os << s << "  " << e.level << "  " << e.name;
            if (!e.witness.empty()) os << " — " << e.witness;
            os << "\n";
        }
        os << (ok() ? "OVERALL PASS" : "OVERALL FAIL") << "\n";
        return os.str();
    }
};

}  // namespace dgt
