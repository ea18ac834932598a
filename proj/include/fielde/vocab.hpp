#pragma once
// Entity/relation dictionaries. Ids are dense, 0-based, assigned in first
// appearance order and stable for the lifetime of the vocabulary.

#include <string>
#include <unordered_map>
#include <vector>

#include "fielde/errors.hpp"

namespace fielde {

class Vocabulary {
public:
    // Returns the existing id or assigns the next one. Throws LookupError on
    // unseen names once the vocabulary is frozen.
    int entity_id(const std::string& name) { return intern(name, entity_names_, entity_ids_, "entity"); }
    int relation_id(const std::string& name) { return intern(name, relation_names_, relation_ids_, "relation"); }

    const std::string& entity_name(int id) const { return entity_names_.at(static_cast<std::size_t>(id)); }
    const std::string& relation_name(int id) const { return relation_names_.at(static_cast<std::size_t>(id)); }

    // Lookup without insertion; -1 when absent.
    int find_entity(const std::string& name) const {
        auto it = entity_ids_.find(name);
        return it == entity_ids_.end() ? -1 : it->second;
    }
    int find_relation(const std::string& name) const {
        auto it = relation_ids_.find(name);
        return it == relation_ids_.end() ? -1 : it->second;
    }

    int num_entities() const { return static_cast<int>(entity_names_.size()); }
    int num_relations() const { return static_cast<int>(relation_names_.size()); }

    void freeze() { frozen_ = true; }
    bool frozen() const { return frozen_; }

private:
    int intern(const std::string& name, std::vector<std::string>& names,
               std::unordered_map<std::string, int>& ids, const char* what) {
        auto it = ids.find(name);
        if (it != ids.end()) return it->second;
        if (frozen_) throw LookupError(std::string("unknown ") + what + " in frozen vocabulary: " + name);
        int id = static_cast<int>(names.size());
        names.push_back(name);
        ids.emplace(name, id);
        return id;
    }

    std::vector<std::string> entity_names_;
    std::vector<std::string> relation_names_;
    std::unordered_map<std::string, int> entity_ids_;
    std::unordered_map<std::string, int> relation_ids_;
    bool frozen_ = false;
};

}  // namespace fielde
