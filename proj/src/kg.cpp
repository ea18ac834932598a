#include "fielde/kg.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>

#include "fielde/errors.hpp"

namespace fielde {

void FilterIndex::add(const Triple& t) {
    tails_[key(t.head, t.rel)].push_back(t.tail);
    heads_[key(t.rel, t.tail)].push_back(t.head);
}

void FilterIndex::finalize() {
    for (auto* m : {&tails_, &heads_}) {
        for (auto& [k, v] : *m) {
            std::sort(v.begin(), v.end());
            v.erase(std::unique(v.begin(), v.end()), v.end());
        }
    }
}

namespace {
const std::vector<int> kEmpty;
}

const std::vector<int>& FilterIndex::tails(int head, int rel) const {
    auto it = tails_.find(key(head, rel));
    return it == tails_.end() ? kEmpty : it->second;
}

const std::vector<int>& FilterIndex::heads(int rel, int tail) const {
    auto it = heads_.find(key(rel, tail));
    return it == heads_.end() ? kEmpty : it->second;
}

bool FilterIndex::contains(const Triple& t) const {
    const auto& ts = tails(t.head, t.rel);
    return std::binary_search(ts.begin(), ts.end(), t.tail);
}

std::size_t FilterIndex::cardinality() const {
    std::size_t n = 0;
    for (const auto& [k, v] : tails_) n += v.size();
    for (const auto& [k, v] : heads_) n += v.size();
    return n;
}

void KnowledgeGraph::build_filter_index() {
    filter = FilterIndex{};
    for (const auto* split : {&train, &valid, &test})
        for (const Triple& t : *split) filter.add(t);
    filter.finalize();
}

std::vector<Triple> parse_triples(std::istream& in, Vocabulary& vocab, const std::string& origin) {
    std::vector<Triple> triples;
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty()) continue;

        const std::size_t first = line.find('\t');
        const std::size_t second = first == std::string::npos ? std::string::npos : line.find('\t', first + 1);
        const std::size_t third = second == std::string::npos ? std::string::npos : line.find('\t', second + 1);
        if (first == std::string::npos || second == std::string::npos || third != std::string::npos)
            throw ParseError(origin + ":" + std::to_string(line_no) +
                             ": expected head<TAB>relation<TAB>tail");

        Triple t;
        t.head = vocab.entity_id(line.substr(0, first));
        t.rel = vocab.relation_id(line.substr(first + 1, second - first - 1));
        t.tail = vocab.entity_id(line.substr(second + 1));
        triples.push_back(t);
    }
    return triples;
}

std::vector<Triple> load_triples(const std::string& path, Vocabulary& vocab) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot open triple file: " + path);
    return parse_triples(in, vocab, path);
}

void write_triples(std::ostream& out, const std::vector<Triple>& triples, const Vocabulary& vocab) {
    for (const Triple& t : triples)
        out << vocab.entity_name(t.head) << '\t' << vocab.relation_name(t.rel) << '\t'
            << vocab.entity_name(t.tail) << '\n';
}

KnowledgeGraph load_dataset(const std::string& train_path, const std::string& valid_path,
                            const std::string& test_path) {
    KnowledgeGraph kg;
    if (!train_path.empty()) kg.train = load_triples(train_path, kg.vocab);
    if (!valid_path.empty()) kg.valid = load_triples(valid_path, kg.vocab);
    if (!test_path.empty()) kg.test = load_triples(test_path, kg.vocab);
    kg.build_filter_index();
    return kg;
}

DatasetStats dataset_stats(const KnowledgeGraph& kg) {
    DatasetStats s;
    s.num_entities = kg.vocab.num_entities();
    s.num_relations = kg.vocab.num_relations();
    s.num_train = kg.train.size();
    s.num_valid = kg.valid.size();
    s.num_test = kg.test.size();
    return s;
}

}  // namespace fielde
