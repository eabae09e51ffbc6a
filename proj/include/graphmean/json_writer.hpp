#pragma once

#include <cmath>
#include <cstdint>
#include <cstdio>
#include <string>
#include <vector>

namespace graphmean {

// Minimal JSON emitter with insertion-ordered keys and doubles printed via
// "%.17g", so every report is byte-stable across runs and thread counts and
// floats round-trip exactly. NaN renders as null.
class JsonWriter {
public:
    JsonWriter& begin_object() { return open('{'); }
    JsonWriter& end_object() { return close('}'); }
    JsonWriter& begin_array() { return open('['); }
    JsonWriter& end_array() { return close(']'); }

    JsonWriter& key(const std::string& name) {
        separate();
        append_string(name);
        out_ += ':';
        pending_value_ = true;
        return *this;
    }

    JsonWriter& value(double x) {
        separate();
        if (std::isnan(x)) {
            out_ += "null";
        } else {
            char buf[40];
            std::snprintf(buf, sizeof(buf), "%.17g", x);
            out_ += buf;
        }
        return *this;
    }

    JsonWriter& value(std::int64_t x) {
        separate();
        out_ += std::to_string(x);
        return *this;
    }

    JsonWriter& value(int x) { return value(static_cast<std::int64_t>(x)); }

    JsonWriter& value_u64(std::uint64_t x) {
        separate();
        out_ += std::to_string(x);
        return *this;
    }

    JsonWriter& value(const std::string& s) {
        separate();
        append_string(s);
        return *this;
    }

    JsonWriter& value(const char* s) { return value(std::string(s)); }

    JsonWriter& value(bool b) {
        separate();
        out_ += b ? "true" : "false";
        return *this;
    }

    JsonWriter& null() {
        separate();
        out_ += "null";
        return *this;
    }

    const std::string& str() const { return out_; }

private:
    JsonWriter& open(char c) {
        separate();
        out_ += c;
        comma_.push_back(false);
        return *this;
    }

    JsonWriter& close(char c) {
        out_ += c;
        comma_.pop_back();
        return *this;
    }

    void separate() {
        if (pending_value_) {
            pending_value_ = false;
            return;
        }
        if (!comma_.empty()) {
            if (comma_.back()) out_ += ',';
            comma_.back() = true;
        }
    }

    void append_string(const std::string& s) {
        out_ += '"';
        for (char c : s) {
            switch (c) {
                case '"': out_ += "\\\""; break;
                case '\\': out_ += "\\\\"; break;
                case '\n': out_ += "\\n"; break;
                case '\t': out_ += "\\t"; break;
                default: out_ += c;
            }
        }
        out_ += '"';
    }

    std::string out_;
    std::vector<bool> comma_;
    bool pending_value_ = false;
};

} // namespace graphmean
