#!/usr/bin/env python3
"""Generate BLS12-381 conformance vectors with py_ecc, the reference
implementation behind the Ethereum consensus test generator.

Inputs mirror the consensus generator's standard private keys and messages.
Output: tests/data/bls_vectors.json (frozen; regenerate only on purpose).
"""
import json
import pathlib

from py_ecc.bls import G2ProofOfPossession as bls

PRIVKEYS = [
    0x263DBD792F5B1BE47ED85F8938C0F29586AF0D3AC7B977F21C278FE1462040E3,
    0x47B8192D77BF871B62E87859D653922725724A5C031AFEABC60BCEF5FF665138,
    0x328388AFF0D4A5B7DC9205ABD374E7E98F3CD9F3418EDB4EAFDA5FB16473D216,
]
MESSAGES = [b"\x00" * 32, b"\x56" * 32, b"\xab" * 32]
KEYGEN_SEEDS = [
    # EIP-2333 test case 0 seed; expected master SK is published there.
    "c55257c360c07c72029aebc1b53c05ed0362ada38ead3e3e9efa3708e53495531f09a6987599d18264c1e1c92f2cf141630c7a3c4ab7c81b2f001698e7463b04",
    "3141592653589793238462643383279502884197169399375105820974944592",
    "0099FF991111002299DD7744EE3355BBDD8844115566CC55663355668888CC00",
    "d4e56740f876aef8c010b86a40d5f56745a118d0906a34e69aec8c0db1cb8fa3",
]
INF_PK = "c0" + "00" * 47
INF_SIG = "c0" + "00" * 95


def h(b):
    return b.hex()


def sk_hex(sk):
    return sk.to_bytes(32, "big").hex()


def main():
    out = {"keygen": [], "sign": [], "verify": [], "aggregate": [], "fast_aggregate_verify": [], "pop": []}

    for seed in KEYGEN_SEEDS:
        sk = bls.KeyGen(bytes.fromhex(seed))
        out["keygen"].append({"ikm": seed.lower(), "sk": sk_hex(sk), "pk": h(bls.SkToPk(sk))})

    for sk in PRIVKEYS:
        pk = bls.SkToPk(sk)
        for msg in MESSAGES:
            sig = bls.Sign(sk, msg)
            out["sign"].append({"sk": sk_hex(sk), "message": h(msg), "signature": h(sig)})
            out["verify"].append({"pk": h(pk), "message": h(msg), "signature": h(sig), "output": True})
            wrong_msg = b"\x01" + msg[1:]
            out["verify"].append({"pk": h(pk), "message": h(wrong_msg), "signature": h(sig),
                                  "output": bls.Verify(pk, wrong_msg, sig)})
            other = bls.SkToPk(PRIVKEYS[(PRIVKEYS.index(sk) + 1) % len(PRIVKEYS)])
            out["verify"].append({"pk": h(other), "message": h(msg), "signature": h(sig),
                                  "output": bls.Verify(other, msg, sig)})
    out["verify"].append({"pk": INF_PK, "message": h(MESSAGES[0]), "signature": INF_SIG, "output": False})

    for msg in MESSAGES:
        sigs = [bls.Sign(sk, msg) for sk in PRIVKEYS]
        out["aggregate"].append({"input": [h(s) for s in sigs], "output": h(bls.Aggregate(sigs))})
        pks = [bls.SkToPk(sk) for sk in PRIVKEYS]
        agg = bls.Aggregate(sigs)
        out["fast_aggregate_verify"].append({"pks": [h(p) for p in pks], "message": h(msg),
                                             "signature": h(agg), "output": bls.FastAggregateVerify(pks, msg, agg)})
        out["fast_aggregate_verify"].append({"pks": [h(p) for p in pks[:2]], "message": h(msg),
                                             "signature": h(agg), "output": bls.FastAggregateVerify(pks[:2], msg, agg)})
        partial = bls.Aggregate(sigs[:2])
        out["fast_aggregate_verify"].append({"pks": [h(p) for p in pks], "message": h(msg),
                                             "signature": h(partial), "output": bls.FastAggregateVerify(pks, msg, partial)})
    out["aggregate"].append({"input": [h(bls.Sign(PRIVKEYS[0], MESSAGES[0]))],
                             "output": h(bls.Sign(PRIVKEYS[0], MESSAGES[0]))})

    for sk in PRIVKEYS:
        pk = bls.SkToPk(sk)
        proof = bls.PopProve(sk)
        out["pop"].append({"sk": sk_hex(sk), "pk": h(pk), "proof": h(proof), "output": bls.PopVerify(pk, proof)})
    # proof presented under a different key
    pk1 = bls.SkToPk(PRIVKEYS[1])
    proof0 = bls.PopProve(PRIVKEYS[0])
    out["pop"].append({"sk": None, "pk": h(pk1), "proof": h(proof0), "output": bls.PopVerify(pk1, proof0)})

    path = pathlib.Path(__file__).resolve().parent.parent / "data" / "bls_vectors.json"
    path.write_text(json.dumps(out, indent=1) + "\n")


if __name__ == "__main__":
    main()
