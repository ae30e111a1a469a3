#pragma once

#include <string>
#include <vector>

#include "costsense/common.hpp"

namespace costsense {

// Minimal JSON emitter with explicit key order and %.17g numbers.
// nlohmann::json is used for *parsing* inputs; output goes through this
// writer so key order and number formatting stay byte-stable.
class JsonWriter {
public:
    JsonWriter& begin_object() { return open('{'); }
    JsonWriter& end_object() { return close('}'); }
    JsonWriter& begin_array() { return open('['); }
    JsonWriter& end_array() { return close(']'); }

    JsonWriter& key(const std::string& k) {
        comma();
        append_string(k);
        out_ += ':';
        pending_value_ = true;
        return *this;
    }

    JsonWriter& value(double x) {
        comma();
        out_ += fmt_sig(x, 17);
        return *this;
    }

    JsonWriter& value(int x) { return value(static_cast<long long>(x)); }

    JsonWriter& value(long long x) {
        comma();
        out_ += std::to_string(x);
        return *this;
    }

    JsonWriter& value(std::uint64_t x) {
        comma();
        out_ += std::to_string(x);
        return *this;
    }

    JsonWriter& value(const std::string& s) {
        comma();
        append_string(s);
        return *this;
    }

    JsonWriter& value(const char* s) { return value(std::string(s)); }

    JsonWriter& value(bool b) {
        comma();
        out_ += b ? "true" : "false";
        return *this;
    }

    // Splices pre-serialized JSON in as one value.
    JsonWriter& raw_value(const std::string& json_text) {
        comma();
        out_ += json_text;
        return *this;
    }

    const std::string& str() const { return out_; }

private:
    JsonWriter& open(char ch) {
        comma();
        out_ += ch;
        need_comma_.push_back(false);
        return *this;
    }

    JsonWriter& close(char ch) {
        out_ += ch;
        need_comma_.pop_back();
        mark_value();
        return *this;
    }

    void comma() {
        if (pending_value_) {
            pending_value_ = false;
            return;
        }
        if (!need_comma_.empty()) {
            if (need_comma_.back()) out_ += ',';
            need_comma_.back() = true;
        }
    }

    void mark_value() {
        if (pending_value_) pending_value_ = false;
        if (!need_comma_.empty()) need_comma_.back() = true;
    }

    void append_string(const std::string& s) {
        out_ += '"';
        for (char ch : s) {
            switch (ch) {
                case '"': out_ += "\\\""; break;
                case '\\': out_ += "\\\\"; break;
                case '\n': out_ += "\\n"; break;
                case '\t': out_ += "\\t"; break;
                case '\r': out_ += "\\r"; break;
                default:
                    if (static_cast<unsigned char>(ch) < 0x20) {
                        char buf[8];
                        std::snprintf(buf, sizeof(buf), "\\u%04x", ch);
                        out_ += buf;
                    } else {
                        out_ += ch;
                    }
            }
        }
        out_ += '"';
    }

    std::string out_;
    std::vector<bool> need_comma_;
    bool pending_value_ = false;
};

}  // namespace costsense
