#pragma once

#include <string>
#include <vector>

namespace pearl {

// Named pass/fail items produced by the check operations.
struct Report {
    struct Item {
        std::string name;
        bool passed = true;
        std::string detail;
    };
    std::vector<Item> items;

    void add(std::string name, bool passed, std::string detail = {}) {
        items.push_back({std::move(name), passed, std::move(detail)});
    }
    void fail(std::string name, std::string detail) { add(std::move(name), false, std::move(detail)); }
    void merge(const Report& o, const std::string& prefix = {}) {
        for (const auto& it : o.items) items.push_back({prefix + it.name, it.passed, it.detail});
    }
    bool ok() const {
        for (const auto& it : items)
            if (!it.passed) return false;
        return true;
    }
    std::vector<Item> failures() const {
        std::vector<Item> out;
        for (const auto& it : items)
            if (!it.passed) out.push_back(it);
        return out;
    }
};

}  // namespace pearl
