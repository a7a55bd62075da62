#include "doctest.h"

#include <sstream>

#include "bitprobe/memory.hpp"

using namespace bitprobe;

namespace {

BitStore three_bit_store() {  // [1, 0, 1]
    BitStore store;
    int region = store.add_region("V", 3);
    store.set_bit({region, 0}, 1);
    store.set_bit({region, 2}, 1);
    store.seal();
    return store;
}

}  // namespace

TEST_CASE("bitstore phases and regions") {
    BitStore store;
    int a = store.add_region("A", 4);
    CHECK_THROWS_AS(store.add_region("A", 2), std::invalid_argument);
    int b = store.add_region("B", 8);
    CHECK(store.total_bits() == 12);
    CHECK(store.region_index("B") == b);
    CHECK_FALSE(store.region_index("C"));

    store.set_bit({a, 3}, 1);
    CHECK_THROWS_AS(store.get_bit({a, 3}), std::logic_error);  // read before seal
    store.seal();
    CHECK(store.get_bit({a, 3}) == 1);
    CHECK(store.get_bit({b, 0}) == 0);
    CHECK_THROWS_AS(store.set_bit({a, 0}, 1), std::logic_error);  // write after seal
    CHECK_THROWS_AS(store.seal(), std::logic_error);
    CHECK_THROWS_AS(store.get_bit({a, 4}), std::out_of_range);
    CHECK_THROWS_AS(store.get_bit({2, 0}), std::out_of_range);
}

TEST_CASE("payload bytes round-trip bit-exactly") {
    BitStore store;
    int a = store.add_region("A", 5);
    int b = store.add_region("B", 11);
    store.set_bit({a, 0}, 1);
    store.set_bit({a, 4}, 1);
    store.set_bit({b, 2}, 1);
    store.set_bit({b, 10}, 1);
    store.seal();
    auto payload = store.payload_bytes();
    CHECK(payload.size() == 2);
    // stream bits: region A occupies 0..4, region B occupies 5..15
    CHECK(payload[0] == ((1u << 0) | (1u << 4) | (1u << 7)));  // A[0], A[4], B[2]->bit 7
    CHECK(payload[1] == (1u << 7));                            // B[10] -> stream bit 15

    BitStore back = BitStore::from_payload({{"A", 5}, {"B", 11}}, payload);
    CHECK(back.sealed());
    for (uint64_t i = 0; i < 5; ++i) CHECK(back.get_bit({0, i}) == store.get_bit({a, i}));
    for (uint64_t i = 0; i < 11; ++i) CHECK(back.get_bit({1, i}) == store.get_bit({b, i}));
    CHECK_THROWS_AS(BitStore::from_payload({{"A", 5}}, payload), std::invalid_argument);
}

TEST_CASE("read_bit and read_xor record probes") {
    BitStore store = three_bit_store();
    ProbeTranscript t;
    CHECK(read_bit(store, {0, 0}, t) == 1);
    CHECK(t.probe_count() == 1);
    CHECK(read_bit(store, {0, 2}, t) == 1);
    CHECK(t.probe_count() == 2);
    CHECK_THROWS_AS(read_bit(store, {0, 3}, t), std::out_of_range);

    ProbeTranscript x;
    CHECK(read_xor(store, {0, 0}, {0, 2}, x) == 0);  // 1 ^ 1
    CHECK(read_xor(store, {0, 0}, {0, 1}, x) == 1);  // 1 ^ 0
    CHECK(read_xor(store, {0, 1}, {0, 1}, x) == 0);  // same address: x ^ x
    CHECK(x.probe_count() == 3);                     // one entry per XOR probe
    CHECK(x.entries[0].arity == 2);
    CHECK(x.entries[0].kind == ProbeKind::QuantumXor);
}

TEST_CASE("probe session injection") {
    BitStore store = three_bit_store();
    ProbeSession real(store);
    CHECK(real.read_bit({0, 0}) == 1);
    CHECK(real.read_xor({0, 0}, {0, 1}) == 1);
    CHECK(real.transcript().probe_count() == 2);

    ProbeSession injected(store, {0, 1});
    CHECK(injected.read_bit({0, 0}) == 0);           // scripted, not the real bit
    CHECK(injected.read_xor({0, 0}, {0, 1}) == 1);   // scripted
    CHECK(injected.read_bit({0, 1}) == 0);           // script exhausted: zeros
    CHECK(injected.transcript().entries[0].a0 == Address{0, 0});

    real.reset(ProbeClass::NonAdaptive);
    CHECK(real.transcript().probe_count() == 0);
    CHECK(real.transcript().declared_class == ProbeClass::NonAdaptive);
}

TEST_CASE("audit: probe budget") {
    BitStore store = three_bit_store();
    ProbeSession session(store);
    session.read_bit({0, 0});
    session.read_bit({0, 1});
    auto never = [](const std::vector<int>&) -> ProbeTranscript { FAIL("not called"); return {}; };
    AuditVerdict over = audit_transcript(session.transcript(), 1, ProbeClass::Adaptive, never);
    CHECK_FALSE(over.pass);
    AuditVerdict ok = audit_transcript(session.transcript(), 2, ProbeClass::Adaptive, never);
    CHECK(ok.pass);
}

TEST_CASE("audit: result-injection replay detects adaptivity") {
    BitStore store = three_bit_store();
    // Query: read bit 0; second address depends on the first result.
    auto adaptive_query = [&](ProbeSession& s) {
        int first = s.read_bit({0, 0});
        s.read_bit({0, first ? 2u : 1u});
    };
    ProbeSession session(store);
    adaptive_query(session);
    Replayer replay = [&](const std::vector<int>& injected) {
        ProbeSession r(store, injected);
        adaptive_query(r);
        return r.transcript();
    };
    AuditVerdict strict = audit_transcript(session.transcript(), 2, ProbeClass::NonAdaptive, replay);
    CHECK_FALSE(strict.pass);
    AuditVerdict loose = audit_transcript(session.transcript(), 2, ProbeClass::Adaptive, replay);
    CHECK(loose.pass);

    // A single XOR probe with fixed addresses is non-adaptive.
    auto fixed_query = [&](ProbeSession& s) { s.read_xor({0, 0}, {0, 2}); };
    ProbeSession fixed(store);
    fixed_query(fixed);
    Replayer fixed_replay = [&](const std::vector<int>& injected) {
        ProbeSession r(store, injected);
        fixed_query(r);
        return r.transcript();
    };
    AuditVerdict pass = audit_transcript(fixed.transcript(), 1, ProbeClass::NonAdaptive, fixed_replay);
    CHECK(pass.pass);
}

TEST_CASE("transcript jsonl dump") {
    BitStore store = three_bit_store();
    ProbeSession session(store);
    session.read_bit({0, 0});
    session.read_xor({0, 1}, {0, 2});
    std::string dump = transcript_to_jsonl(session.transcript(), store);
    std::istringstream lines(dump);
    std::string line1, line2;
    std::getline(lines, line1);
    std::getline(lines, line2);
    CHECK(line1 == R"({"addresses":[{"offset":0,"region":"V"}],"kind":"classical_read","result":1})");
    CHECK(line2.find("quantum_xor") != std::string::npos);
    CHECK(line2.find(R"("offset":2)") != std::string::npos);
}
