#!/usr/bin/env python3
"""Freeze published RFC vectors for the handshake primitives.

Each vector is typed in from its RFC and re-derived here with python's
`cryptography`/`hmac` before it is written, so a transcription error fails
loudly instead of landing in the test data.
"""
import hashlib
import hmac
import json
import pathlib

from cryptography.hazmat.primitives import hashes
from cryptography.hazmat.primitives.asymmetric.x25519 import X25519PrivateKey, X25519PublicKey
from cryptography.hazmat.primitives.ciphers.aead import ChaCha20Poly1305
from cryptography.hazmat.primitives.kdf.hkdf import HKDF
from cryptography.hazmat.primitives import serialization

# RFC 8439 section 2.8.2
AEAD = {
    "key": "808182838485868788898a8b8c8d8e8f909192939495969798999a9b9c9d9e9f",
    "nonce": "070000004041424344454647",
    "aad": "50515253c0c1c2c3c4c5c6c7",
    "plaintext": b"Ladies and Gentlemen of the class of '99: If I could offer you only one tip for the future, sunscreen would be it.".hex(),
    "ciphertext": "d31a8d34648e60db7b86afbc53ef7ec2a4aded51296e08fea9e2b5a736ee62d63dbea45e8ca9671282fafb69da92728b1a71de0a9e060b2905d6a5b67ecd3b3692ddbd7f2d778b8c9803aee328091b58fab324e4fad675945585808b4831d7bc3ff4def08e4b7a9de576d26586cec64b6116",
    "tag": "1ae10b594f09e26a7e902ecbd0600691",
}

# RFC 4231 test cases 1, 2, 3, 4, 6, 7 (HMAC-SHA-256 column)
HMAC = [
    {"key": "0b" * 20, "data": b"Hi There".hex(),
     "mac": "b0344c61d8db38535ca8afceaf0bf12b881dc200c9833da726e9376c2e32cff7"},
    {"key": b"Jefe".hex(), "data": b"what do ya want for nothing?".hex(),
     "mac": "5bdcc146bf60754e6a042426089575c75a003f089d2739839dec58b964ec3843"},
    {"key": "aa" * 20, "data": "dd" * 50,
     "mac": "773ea91e36800e46854db8ebd09181a72959098b3ef8c122d9635514ced565fe"},
    {"key": "0102030405060708090a0b0c0d0e0f10111213141516171819", "data": "cd" * 50,
     "mac": "82558a389a443c0ea4cc819899f2083a85f0faa3e578f8077a2e3ff46729665b"},
    {"key": "aa" * 131, "data": b"Test Using Larger Than Block-Size Key - Hash Key First".hex(),
     "mac": "60e431591ee0b67f0d8a26aacbf5b77f8e0bc6213728c5140546040f0ee37f54"},
    {"key": "aa" * 131,
     "data": b"This is a test using a larger than block-size key and a larger than block-size data. The key needs to be hashed before being used by the HMAC algorithm.".hex(),
     "mac": "9b09ffa71b942fcb27635fbcd5b0e944bfdc63644f0713938a7f51535c3a35e2"},
]

# RFC 5869 test cases 1-3
HKDF_CASES = [
    {"ikm": "0b" * 22, "salt": "000102030405060708090a0b0c", "info": "f0f1f2f3f4f5f6f7f8f9", "length": 42,
     "prk": "077709362c2e32df0ddc3f0dc47bba6390b6c73bb50f9c3122ec844ad7c2b3e5",
     "okm": "3cb25f25faacd57a90434f64d0362f2a2d2d0a90cf1a5a4c5db02d56ecc4c5bf34007208d5b887185865"},
    {"ikm": bytes(range(0x00, 0x50)).hex(), "salt": bytes(range(0x60, 0xb0)).hex(),
     "info": bytes(range(0xb0, 0x100)).hex(), "length": 82,
     "prk": "06a6b88c5853361a06104c9ceb35b45cef760014904671014a193f40c15fc244",
     "okm": "b11e398dc80327a1c8e7f78c596a49344f012eda2d4efad8a050cc4c19afa97c59045a99cac7827271cb41c65e590e09da3275600c2f09b8367793a9aca3db71cc30c58179ec3e87c14c01d5c1f3434f1d87"},
    {"ikm": "0b" * 22, "salt": "", "info": "", "length": 42,
     "prk": "19ef24a32c717b167f33a91d6f648bdf96596776afdb6377ac434c1c293ccb04",
     "okm": "8da4e775a563c18f715f802a063c5a31b8a11f5c5ee1879ec3454e5f3c738d2d9d201395faa4b61a96c8"},
]

# RFC 7748 section 6.1
X25519 = {
    "alice_sk": "77076d0a7318a57d3c16c17251b26645df4c2f87ebc0992ab177fba51db92c2a",
    "alice_pk": "8520f0098930a754748b7ddcb43ef75a0dbf3a0d26381af4eba4a98eaa9b4e6a",
    "bob_sk": "5dab087e624a8a4b79e17f8b83800ee66f3bb1292618b6fd1c2f8b27ff88e0eb",
    "bob_pk": "de9edb7d7b7dc1b4d35b61c2ece435373f8343c85b78674dadfc7e146f882b4f",
    "shared": "4a5d9d5ba4ce2de1728e3bf480350f25e07e21c947d19e3376f09b3c1e161742",
}


def check():
    b = bytes.fromhex
    ct = ChaCha20Poly1305(b(AEAD["key"])).encrypt(b(AEAD["nonce"]), b(AEAD["plaintext"]), b(AEAD["aad"]))
    assert ct.hex() == AEAD["ciphertext"] + AEAD["tag"], "RFC 8439 vector mismatch"

    for v in HMAC:
        assert hmac.new(b(v["key"]), b(v["data"]), hashlib.sha256).hexdigest() == v["mac"], v

    for v in HKDF_CASES:
        prk = hmac.new(b(v["salt"]) or b"\x00" * 32, b(v["ikm"]), hashlib.sha256).hexdigest()
        assert prk == v["prk"], v
        okm = HKDF(algorithm=hashes.SHA256(), length=v["length"], salt=b(v["salt"]) or None,
                   info=b(v["info"])).derive(b(v["ikm"]))
        assert okm.hex() == v["okm"], v

    raw = serialization.Encoding.Raw, serialization.PublicFormat.Raw
    alice = X25519PrivateKey.from_private_bytes(b(X25519["alice_sk"]))
    bob = X25519PrivateKey.from_private_bytes(b(X25519["bob_sk"]))
    assert alice.public_key().public_bytes(*raw).hex() == X25519["alice_pk"]
    assert bob.public_key().public_bytes(*raw).hex() == X25519["bob_pk"]
    assert alice.exchange(X25519PublicKey.from_public_bytes(b(X25519["bob_pk"]))).hex() == X25519["shared"]


def main():
    check()
    path = pathlib.Path(__file__).resolve().parent.parent / "data" / "rfc_vectors.json"
    path.write_text(json.dumps({"chacha20poly1305": AEAD, "hmac_sha256": HMAC, "hkdf_sha256": HKDF_CASES,
                                "x25519": X25519}, indent=1) + "\n")


if __name__ == "__main__":
    main()
