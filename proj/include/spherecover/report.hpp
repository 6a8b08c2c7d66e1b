#pragma once

#include <string>
#include <vector>

#include <json.hpp>

namespace spherecover {

// Structured command output.  Keys are dotted paths; text form is one
// "path: value" line per leaf in insertion order, json form is the nested
// object.  Both renderings are deterministic.
class Report {
  public:
    using Json = nlohmann::ordered_json;

    void set(const std::string& dotted, const Json& value) {
        Json* cur = &data_;
        std::size_t start = 0;
        while (true) {
            std::size_t dot = dotted.find('.', start);
            if (dot == std::string::npos) {
                (*cur)[dotted.substr(start)] = value;
                return;
            }
            cur = &((*cur)[dotted.substr(start, dot - start)]);
            start = dot + 1;
        }
    }

    const Json& root() const { return data_; }

    std::string text() const {
        std::string out;
        walk(data_, "", out);
        return out;
    }

    std::string json() const { return data_.dump(2) + "\n"; }

  private:
    static void walk(const Json& node, const std::string& prefix, std::string& out) {
        if (node.is_object()) {
            for (auto it = node.begin(); it != node.end(); ++it)
                walk(it.value(), prefix.empty() ? it.key() : prefix + "." + it.key(), out);
            return;
        }
        std::string v = node.is_string() ? node.get<std::string>() : node.dump();
        out += prefix + ": " + v + "\n";
    }

    Json data_ = Json::object();
};

}  // namespace spherecover
