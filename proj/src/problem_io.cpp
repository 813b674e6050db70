#include "tvtest/problem_io.hpp"

#include <chrono>
#include <ctime>
#include <string>
#include <vector>

namespace tvtest::io {

namespace {

// SAX handler building a DOM in which every float literal is replaced by its
// raw token string. Integer tokens stay integers, so exactness is never lost
// and rational mode can reconstruct decimal inputs verbatim.
class NumberPreservingBuilder {
  public:
    bool null() { return emplace(json(nullptr)); }
    bool boolean(bool v) { return emplace(json(v)); }
    bool number_integer(json::number_integer_t v) { return emplace(json(v)); }
    bool number_unsigned(json::number_unsigned_t v) { return emplace(json(v)); }
    bool number_float(json::number_float_t, const std::string& raw) { return emplace(json(raw)); }
    bool string(std::string& v) { return emplace(json(v)); }
    bool binary(json::binary_t& v) { return emplace(json(v)); }

    bool start_object(std::size_t) {
        stack_.push_back(emplace_container(json::object()));
        return true;
    }
    bool key(std::string& k) {
        pending_key_ = k;
        return true;
    }
    bool end_object() {
        stack_.pop_back();
        return true;
    }
    bool start_array(std::size_t) {
        stack_.push_back(emplace_container(json::array()));
        return true;
    }
    bool end_array() {
        stack_.pop_back();
        return true;
    }

    bool parse_error(std::size_t position, const std::string&, const nlohmann::detail::exception& ex) {
        throw SyntaxError("JSON parse error at byte " + std::to_string(position) + ": " + ex.what());
    }

    json take() { return std::move(root_); }

  private:
    bool emplace(json v) {
        insert(std::move(v));
        return true;
    }

    json* emplace_container(json v) {
        return insert(std::move(v));
    }

    json* insert(json v) {
        if (stack_.empty()) {
            root_ = std::move(v);
            return &root_;
        }
        json* top = stack_.back();
        if (top->is_array()) {
            top->push_back(std::move(v));
            return &top->back();
        }
        (*top)[pending_key_] = std::move(v);  // duplicate keys: last one wins
        return &(*top)[pending_key_];
    }

    json root_;
    std::vector<json*> stack_;
    std::string pending_key_;
};

}  // namespace

json parse_preserving_numbers(const std::string& text) {
    NumberPreservingBuilder builder;
    if (!json::sax_parse(text, &builder)) {
        throw SyntaxError("JSON parse error");
    }
    return builder.take();
}

std::string utc_timestamp() {
    const auto now = std::chrono::system_clock::now();
    const std::time_t t = std::chrono::system_clock::to_time_t(now);
    std::tm tm{};
    gmtime_r(&t, &tm);
    char buf[32];
    std::strftime(buf, sizeof(buf), "%Y-%m-%dT%H:%M:%SZ", &tm);
    return std::string(buf);
}

// Reports round-trip through the stock parser: rational fields are strings
// already, and double fields re-read bit-exactly from their shortest form.
json parse_report(const std::string& text) {
    try {
        return json::parse(text);
    } catch (const json::parse_error& e) {
        throw SyntaxError(std::string("JSON parse error: ") + e.what());
    }
}

}  // namespace tvtest::io
