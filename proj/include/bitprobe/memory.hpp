#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace bitprobe {

enum class ProbeKind : uint8_t { ClassicalRead, QuantumXor };
enum class ProbeClass : uint8_t { Adaptive, NonAdaptive };

struct Address {
    int region = 0;  // index into the store's region table
    uint64_t offset = 0;

    friend bool operator==(const Address& a, const Address& b) {
        return a.region == b.region && a.offset == b.offset;
    }
};

// One probe: a classical read touches one address, a quantum XOR touches two
// but still counts as a single probe.
struct ProbeEntry {
    ProbeKind kind = ProbeKind::ClassicalRead;
    Address a0;
    Address a1;
    int arity = 1;  // 1 classical, 2 quantum
    int result = 0;

    bool same_addresses(const ProbeEntry& other) const {
        return kind == other.kind && arity == other.arity && a0 == other.a0 &&
               (arity < 2 || a1 == other.a1);
    }
};

struct ProbeTranscript {
    std::vector<ProbeEntry> entries;
    ProbeClass declared_class = ProbeClass::Adaptive;

    int probe_count() const { return static_cast<int>(entries.size()); }
    void clear() { entries.clear(); }
};

struct BitStoreRegion {
    std::string name;
    uint64_t bits = 0;
};

// Named bit regions packed into one contiguous bit string. Write-only while
// building, read-only once sealed; crossing the phases throws.
class BitStore {
 public:
    int add_region(std::string name, uint64_t bits);
    void seal();
    bool sealed() const { return sealed_; }

    void set_bit(Address a, int value);  // building phase only
    int get_bit(Address a) const;        // sealed phase only

    uint64_t total_bits() const { return total_bits_; }
    int region_count() const { return static_cast<int>(regions_.size()); }
    const BitStoreRegion& region(int index) const { return regions_.at(index); }
    std::optional<int> region_index(std::string_view name) const;

    // Payload: the regions' bit strings concatenated into one stream, packed
    // into bytes with bit i of the stream at bit (i mod 8) of byte (i / 8).
    std::vector<uint8_t> payload_bytes() const;
    static BitStore from_payload(std::vector<BitStoreRegion> regions,
                                 const std::vector<uint8_t>& payload);

 private:
    uint64_t flat_offset(Address a) const;

    std::vector<BitStoreRegion> regions_;
    std::vector<uint64_t> region_start_;
    std::vector<uint64_t> words_;
    uint64_t total_bits_ = 0;
    bool sealed_ = false;
};

// The two probe primitives; each appends exactly one transcript entry.
int read_bit(const BitStore& store, Address a, ProbeTranscript& t);
int read_xor(const BitStore& store, Address a0, Address a1, ProbeTranscript& t);

// Runs a query either against the sealed store or against an injected
// result script (for adaptivity replay); either way the address trace is
// recorded.
class ProbeSession {
 public:
    explicit ProbeSession(const BitStore& store) : store_(&store) {}
    ProbeSession(const BitStore& store, std::vector<int> injected_results)
        : store_(&store), injected_(std::move(injected_results)) {}

    int read_bit(Address a);
    int read_xor(Address a0, Address a1);

    ProbeTranscript& transcript() { return transcript_; }
    const ProbeTranscript& transcript() const { return transcript_; }
    void reset(ProbeClass declared);

 private:
    int next_injected();

    const BitStore* store_;
    std::optional<std::vector<int>> injected_;
    size_t cursor_ = 0;
    ProbeTranscript transcript_;
};

struct AuditVerdict {
    bool pass = true;
    std::string detail;
};

// Re-runs the query with an injected result pattern and returns the
// transcript it would have produced.
using Replayer = std::function<ProbeTranscript(const std::vector<int>&)>;

// PASS iff the probe count fits the budget and, for NonAdaptive, replaying
// under every 2^k result pattern reproduces the identical address sequence.
AuditVerdict audit_transcript(const ProbeTranscript& t, int max_probes, ProbeClass required,
                              const Replayer& replay);

std::string probe_class_name(ProbeClass c);
std::string probe_kind_name(ProbeKind k);

// One JSON object per probe: {"kind": ..., "addresses": [...], "result": ...}.
std::string transcript_to_jsonl(const ProbeTranscript& t, const BitStore& store);

}  // namespace bitprobe
