#!/usr/bin/env python3
"""Derives expected.json and the .spki.bin dumps from the frozen
certificates, using the python cryptography package rather than the
library under test. The owner names are written down by hand from the
fixture definitions in gen_certs.py."""

import json
import os

from cryptography import x509
from cryptography.hazmat.primitives.serialization import Encoding, PublicFormat

HERE = os.path.dirname(os.path.abspath(__file__))
os.chdir(HERE)


def compute_keytag(key):
    # Transcription of the published key-tag C routine.
    ac = 0
    for i in range(len(key)):
        ac += key[i] if (i & 1) else key[i] << 8
    ac += (ac >> 16) & 0xFFFF
    return ac & 0xFFFF


ALGORITHM = {
    "1.2.840.113549.1.1.4": 1,  # RSA/MD5
    "1.2.840.10040.4.3": 3,     # DSA/SHA1
    "1.2.840.113549.1.1.5": 5,  # RSA/SHA1
}

VERSION = {x509.Version.v1: 1, x509.Version.v3: 3}

OWNERS = {
    "personal.der": "marinus.marian.polito.it",
    "personal_renewed.der": "marinus.marian.polito.it",
    "personal_second.der": "marinus.marian.polito.it",
    "server.der": "www.polito.it",
    "small.der": "ns.polito.it",
    "v1_legacy.der": None,
    "dc_subject.der": "ca1.polito.it",
}

expected = {}
for name in sorted(OWNERS):
    with open(name, "rb") as f:
        der = f.read()
    cert = x509.load_der_x509_certificate(der)
    spki = cert.public_key().public_bytes(Encoding.DER,
                                          PublicFormat.SubjectPublicKeyInfo)
    spki_file = name.replace(".der", ".spki.bin")
    with open(spki_file, "wb") as f:
        f.write(spki)

    san = []
    try:
        ext = cert.extensions.get_extension_for_class(x509.SubjectAlternativeName)
        for gn in ext.value:
            if isinstance(gn, x509.RFC822Name):
                san.append("rfc822:" + gn.value)
            elif isinstance(gn, x509.DNSName):
                san.append("dns:" + gn.value)
            elif isinstance(gn, x509.UniformResourceIdentifier):
                san.append("uri:" + gn.value)
            elif isinstance(gn, x509.IPAddress):
                san.append("ip:" + str(gn.value))
    except x509.ExtensionNotFound:
        pass

    sig_oid = cert.signature_algorithm_oid.dotted_string
    expected[name] = {
        "size": len(der),
        "version": VERSION[cert.version],
        "subject": [(a.oid.dotted_string, a.value) for a in cert.subject],
        "san": san,
        "sig_oid": sig_oid,
        "algorithm": ALGORITHM.get(sig_oid, 0),
        "spki_file": spki_file,
        "spki_size": len(spki),
        "keytag": compute_keytag(spki),
        "owner": OWNERS[name],
    }

with open("expected.json", "w") as f:
    json.dump(expected, f, indent=2, sort_keys=True)
    f.write("\n")

for name, e in sorted(expected.items()):
    print(f"{name}: size={e['size']} keytag={e['keytag']} alg={e['algorithm']} "
          f"owner={e['owner']}")
