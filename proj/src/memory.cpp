#include "bitprobe/memory.hpp"

#include <sstream>
#include <stdexcept>

#include "json.hpp"

namespace bitprobe {

int BitStore::add_region(std::string name, uint64_t bits) {
    if (sealed_) throw std::logic_error("BitStore: add_region after seal");
    if (region_index(name)) throw std::invalid_argument("duplicate region name");
    regions_.push_back({std::move(name), bits});
    region_start_.push_back(total_bits_);
    total_bits_ += bits;
    words_.resize((total_bits_ + 63) / 64, 0);
    return static_cast<int>(regions_.size()) - 1;
}

void BitStore::seal() {
    if (sealed_) throw std::logic_error("BitStore: already sealed");
    sealed_ = true;
}

uint64_t BitStore::flat_offset(Address a) const {
    if (a.region < 0 || a.region >= static_cast<int>(regions_.size()))
        throw std::out_of_range("BitStore: bad region");
    if (a.offset >= regions_[a.region].bits) throw std::out_of_range("BitStore: offset out of range");
    return region_start_[a.region] + a.offset;
}

void BitStore::set_bit(Address a, int value) {
    if (sealed_) throw std::logic_error("BitStore: write after seal");
    uint64_t pos = flat_offset(a);
    uint64_t mask = uint64_t{1} << (pos % 64);
    if (value)
        words_[pos / 64] |= mask;
    else
        words_[pos / 64] &= ~mask;
}

int BitStore::get_bit(Address a) const {
    if (!sealed_) throw std::logic_error("BitStore: read before seal");
    uint64_t pos = flat_offset(a);
    return static_cast<int>((words_[pos / 64] >> (pos % 64)) & 1);
}

std::optional<int> BitStore::region_index(std::string_view name) const {
    for (size_t i = 0; i < regions_.size(); ++i)
        if (regions_[i].name == name) return static_cast<int>(i);
    return std::nullopt;
}

std::vector<uint8_t> BitStore::payload_bytes() const {
    std::vector<uint8_t> bytes((total_bits_ + 7) / 8, 0);
    for (uint64_t pos = 0; pos < total_bits_; ++pos) {
        int bit = static_cast<int>((words_[pos / 64] >> (pos % 64)) & 1);
        if (bit) bytes[pos / 8] |= static_cast<uint8_t>(1u << (pos % 8));
    }
    return bytes;
}

BitStore BitStore::from_payload(std::vector<BitStoreRegion> regions,
                                const std::vector<uint8_t>& payload) {
    BitStore store;
    for (auto& r : regions) store.add_region(r.name, r.bits);
    if (payload.size() != (store.total_bits_ + 7) / 8)
        throw std::invalid_argument("payload size does not match region table");
    for (uint64_t pos = 0; pos < store.total_bits_; ++pos) {
        int bit = (payload[pos / 8] >> (pos % 8)) & 1;
        if (bit) store.words_[pos / 64] |= uint64_t{1} << (pos % 64);
    }
    store.sealed_ = true;
    return store;
}

int read_bit(const BitStore& store, Address a, ProbeTranscript& t) {
    int value = store.get_bit(a);
    t.entries.push_back({ProbeKind::ClassicalRead, a, Address{}, 1, value});
    return value;
}

int read_xor(const BitStore& store, Address a0, Address a1, ProbeTranscript& t) {
    int value = store.get_bit(a0) ^ store.get_bit(a1);
    t.entries.push_back({ProbeKind::QuantumXor, a0, a1, 2, value});
    return value;
}

int ProbeSession::next_injected() {
    const auto& script = *injected_;
    return cursor_ < script.size() ? script[cursor_++] : 0;
}

int ProbeSession::read_bit(Address a) {
    if (!injected_) return bitprobe::read_bit(*store_, a, transcript_);
    int value = next_injected();
    transcript_.entries.push_back({ProbeKind::ClassicalRead, a, Address{}, 1, value});
    return value;
}

int ProbeSession::read_xor(Address a0, Address a1) {
    if (!injected_) return bitprobe::read_xor(*store_, a0, a1, transcript_);
    int value = next_injected();
    transcript_.entries.push_back({ProbeKind::QuantumXor, a0, a1, 2, value});
    return value;
}

void ProbeSession::reset(ProbeClass declared) {
    transcript_.clear();
    transcript_.declared_class = declared;
    cursor_ = 0;
}

AuditVerdict audit_transcript(const ProbeTranscript& t, int max_probes, ProbeClass required,
                              const Replayer& replay) {
    if (t.probe_count() > max_probes)
        return {false, "probe budget exceeded: " + std::to_string(t.probe_count()) + " > " +
                           std::to_string(max_probes)};
    if (required == ProbeClass::Adaptive) return {true, "adaptive, within budget"};
    const int k = t.probe_count();
    if (k > 16) return {false, "non-adaptive replay audit refused beyond 16 probes"};
    for (uint32_t pattern = 0; pattern < (uint32_t{1} << k); ++pattern) {
        std::vector<int> injected(k);
        for (int j = 0; j < k; ++j) injected[j] = static_cast<int>((pattern >> j) & 1);
        ProbeTranscript replayed = replay(injected);
        if (replayed.probe_count() != k)
            return {false, "probe count depends on results (pattern " + std::to_string(pattern) + ")"};
        for (int j = 0; j < k; ++j)
            if (!replayed.entries[j].same_addresses(t.entries[j]))
                return {false, "probe " + std::to_string(j) + " address depends on results (pattern " +
                                   std::to_string(pattern) + ")"};
    }
    return {true, "non-adaptive under all result injections"};
}

std::string probe_class_name(ProbeClass c) {
    return c == ProbeClass::Adaptive ? "adaptive" : "non-adaptive";
}

std::string probe_kind_name(ProbeKind k) {
    return k == ProbeKind::ClassicalRead ? "classical_read" : "quantum_xor";
}

std::string transcript_to_jsonl(const ProbeTranscript& t, const BitStore& store) {
    std::ostringstream out;
    for (const auto& entry : t.entries) {
        nlohmann::json addresses = nlohmann::json::array();
        auto push = [&](const Address& a) {
            addresses.push_back({{"region", store.region(a.region).name}, {"offset", a.offset}});
        };
        push(entry.a0);
        if (entry.arity == 2) push(entry.a1);
        nlohmann::json line = {{"kind", probe_kind_name(entry.kind)},
                               {"addresses", addresses},
                               {"result", entry.result}};
        out << line.dump() << '\n';
    }
    return out.str();
}

}  // namespace bitprobe
