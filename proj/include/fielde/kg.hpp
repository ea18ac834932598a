#pragma once
// Triple store with train/valid/test splits and the filtered-candidate index
// used by ranked evaluation. Immutable once built; safe to share across
// threads.

#include <cstdint>
#include <iosfwd>
#include <string>
#include <unordered_map>
#include <vector>

#include "fielde/vocab.hpp"

namespace fielde {

struct Triple {
    int head = 0;
    int rel = 0;
    int tail = 0;

    friend bool operator==(const Triple&, const Triple&) = default;
};

// (head, rel) -> true tails and (rel, tail) -> true heads over the union of
// all splits. Member vectors are sorted and duplicate-free.
class FilterIndex {
public:
    void add(const Triple& t);
    void finalize();  // sort + dedup; call once after all adds

    const std::vector<int>& tails(int head, int rel) const;
    const std::vector<int>& heads(int rel, int tail) const;
    bool contains(const Triple& t) const;

    // Total membership count: each distinct triple appears once per direction.
    std::size_t cardinality() const;

private:
    static std::uint64_t key(int a, int b) {
        return (static_cast<std::uint64_t>(static_cast<std::uint32_t>(a)) << 32) |
               static_cast<std::uint32_t>(b);
    }
    std::unordered_map<std::uint64_t, std::vector<int>> tails_;
    std::unordered_map<std::uint64_t, std::vector<int>> heads_;
};

struct KnowledgeGraph {
    Vocabulary vocab;
    std::vector<Triple> train;
    std::vector<Triple> valid;
    std::vector<Triple> test;
    FilterIndex filter;

    void build_filter_index();
};

struct DatasetStats {
    int num_entities = 0;
    int num_relations = 0;
    std::size_t num_train = 0;
    std::size_t num_valid = 0;
    std::size_t num_test = 0;
};

// Reads UTF-8 TSV triples (head<TAB>relation<TAB>tail, no header), extending
// the vocabulary in first-appearance order. Lines are 1-counted in errors;
// empty lines are skipped, trailing \r is tolerated.
std::vector<Triple> load_triples(const std::string& path, Vocabulary& vocab);
std::vector<Triple> parse_triples(std::istream& in, Vocabulary& vocab, const std::string& origin);

// Writes triples back as TSV using the vocabulary's names.
void write_triples(std::ostream& out, const std::vector<Triple>& triples, const Vocabulary& vocab);

// Loads train/valid/test (empty path = empty split) and builds the filter
// index. Ids are assigned train first, then valid, then test.
KnowledgeGraph load_dataset(const std::string& train_path, const std::string& valid_path,
                            const std::string& test_path);

DatasetStats dataset_stats(const KnowledgeGraph& kg);

}  // namespace fielde
