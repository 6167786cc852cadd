#pragma once

#include <cstdio>
#include <ostream>
#include <string>
#include <utility>
#include <vector>

#include "valuedom/matrix.hpp"

namespace valuedom {

/// Fixed 10-significant-digit rendering used by every emitted document, so
/// reports are byte-stable across runs and suitable for golden-file tests.
inline std::string format_number(double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.10g", v);
    return buf;
}

/**
 * @brief Minimal JSON document builder with insertion-ordered object keys
 *        and the fixed number format above.
 *
 * Ingestion uses a full JSON parser; emission goes through this writer so
 * the output layout is fully under the toolkit's control.
 */
class Report {
public:
    Report() : kind_(Kind::null) {}

    static Report object() {
        Report r;
        r.kind_ = Kind::object;
        return r;
    }
    static Report array() {
        Report r;
        r.kind_ = Kind::array;
        return r;
    }
    static Report number(double v) {
        Report r;
        r.kind_ = Kind::number;
        r.text_ = format_number(v);
        return r;
    }
    static Report integer(long long v) {
        Report r;
        r.kind_ = Kind::number;
        r.text_ = std::to_string(v);
        return r;
    }
    static Report boolean(bool v) {
        Report r;
        r.kind_ = Kind::boolean;
        r.text_ = v ? "true" : "false";
        return r;
    }
    static Report string(std::string v) {
        Report r;
        r.kind_ = Kind::string;
        r.text_ = std::move(v);
        return r;
    }
    static Report numbers(const Vector& v) {
        Report r = array();
        for (double x : v) r.push(number(x));
        return r;
    }
    static Report strings(const std::vector<std::string>& v) {
        Report r = array();
        for (const auto& s : v) r.push(string(s));
        return r;
    }

    Report& set(const std::string& key, Report value) {
        members_.emplace_back(key, std::move(value));
        return *this;
    }
    Report& push(Report value) {
        items_.push_back(std::move(value));
        return *this;
    }

    void dump(std::ostream& os, int indent = 0) const {
        const std::string pad(static_cast<std::size_t>(indent), ' ');
        const std::string inner(static_cast<std::size_t>(indent) + 2, ' ');
        switch (kind_) {
            case Kind::null: os << "null"; break;
            case Kind::number:
            case Kind::boolean: os << text_; break;
            case Kind::string: os << '"' << escaped(text_) << '"'; break;
            case Kind::array:
                if (items_.empty()) {
                    os << "[]";
                    break;
                }
                os << "[";
                for (std::size_t i = 0; i < items_.size(); ++i) {
                    os << (i ? ",\n" : "\n") << inner;
                    items_[i].dump(os, indent + 2);
                }
                os << "\n" << pad << "]";
                break;
            case Kind::object:
                if (members_.empty()) {
                    os << "{}";
                    break;
                }
                os << "{";
                for (std::size_t i = 0; i < members_.size(); ++i) {
                    os << (i ? ",\n" : "\n") << inner;
                    os << '"' << escaped(members_[i].first) << "\": ";
                    members_[i].second.dump(os, indent + 2);
                }
                os << "\n" << pad << "}";
                break;
        }
    }

private:
    enum class Kind { null, number, boolean, string, array, object };

    static std::string escaped(const std::string& s) {
        std::string out;
        out.reserve(s.size());
        for (char c : s) {
            if (c == '"' || c == '\\') out.push_back('\\');
            out.push_back(c);
        }
        return out;
    }

    Kind kind_;
    std::string text_;
    std::vector<Report> items_;
    std::vector<std::pair<std::string, Report>> members_;
};

inline std::ostream& operator<<(std::ostream& os, const Report& r) {
    r.dump(os);
    os << "\n";
    return os;
}

} // namespace valuedom
