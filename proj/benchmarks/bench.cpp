#include <benchmark/benchmark.h>

#include "qboots/blindrot.hpp"
#include "qboots/mhe.hpp"
#include "qboots/pir/qcpir.hpp"
#include "qboots/qsim/circuit.hpp"

using namespace qboots;

namespace {

mhe::MheParams accumulator_params() {
  return mhe::MheParams{u64(1) << 48, 1, 2, double(u64(1) << 37)};
}

void BM_MheEncrypt(benchmark::State& state) {
  Rng rng = derive_rng(1, 0);
  mhe::MheKeyPair kp = mhe::mhe_keygen(accumulator_params(), rng);
  for (auto _ : state) benchmark::DoNotOptimize(mhe::mhe_encrypt(kp.pk, 1, rng));
}
BENCHMARK(BM_MheEncrypt);

void BM_MheMul(benchmark::State& state) {
  Rng rng = derive_rng(2, 0);
  mhe::MheKeyPair kp = mhe::mhe_keygen(accumulator_params(), rng);
  mhe::MheCiphertext a = mhe::mhe_encrypt(kp.pk, 1, rng);
  mhe::MheCiphertext b = mhe::mhe_encrypt(kp.pk, 0, rng);
  for (auto _ : state) benchmark::DoNotOptimize(mhe::mhe_mul(a, b));
}
BENCHMARK(BM_MheMul);

void BM_MheXor(benchmark::State& state) {
  Rng rng = derive_rng(3, 0);
  mhe::MheKeyPair kp = mhe::mhe_keygen(accumulator_params(), rng);
  mhe::MheCiphertext a = mhe::mhe_encrypt(kp.pk, 1, rng);
  mhe::MheCiphertext b = mhe::mhe_encrypt(kp.pk, 1, rng);
  for (auto _ : state) benchmark::DoNotOptimize(mhe::mhe_xor(a, b));
}
BENCHMARK(BM_MheXor);

void BM_BlindRotate(benchmark::State& state) {
  lwe::LweParams p{u64(1) << 20, 16, 16, 8};
  blindrot::BootstrapParams bp{u64(1) << 20, 16};
  Rng rng = derive_rng(4, 0);
  qfhe::CrotAuthority authority(accumulator_params(), 1, 42);
  lwe::LweSecretKey key = lwe::lwe_keygen(p, rng);
  std::vector<mhe::MheCiphertext> enc_s;
  for (auto bit : key.s) enc_s.push_back(authority.encrypt_bit(bit, rng));
  lwe::LweCiphertext ct = lwe::lwe_encrypt(key, 7, p, rng);
  for (auto _ : state)
    benchmark::DoNotOptimize(blindrot::blind_rotate(ct, enc_s, bp, authority, rng));
}
BENCHMARK(BM_BlindRotate)->Unit(benchmark::kMillisecond);

void BM_BuildMemoryCircuit(benchmark::State& state) {
  u64 N = u64(state.range(0));
  Rng rng = derive_rng(5, 0);
  std::vector<u64> db(N);
  for (auto& w : db) w = rng() & 15;
  for (auto _ : state)
    benchmark::DoNotOptimize(qsim::build_qram_circuit(db, 4, static_cast<u32>(N)));
}
BENCHMARK(BM_BuildMemoryCircuit)->Arg(16)->Arg(64)->Arg(256);

void BM_SingleRoundRetrieval(benchmark::State& state) {
  Rng rng = derive_rng(6, 0);
  pir::Database db = pir::random_database(u64(state.range(0)), 4, rng);
  for (auto _ : state) {
    qfhe::CrotAuthority authority(accumulator_params(), 1, 7);
    benchmark::DoNotOptimize(pir::qcpir_run(db, 1, authority, rng));
  }
}
BENCHMARK(BM_SingleRoundRetrieval)->Arg(8)->Arg(64)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
