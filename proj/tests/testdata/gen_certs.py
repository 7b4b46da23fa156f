#!/usr/bin/env python3
"""Regenerates the frozen certificate fixtures using the openssl CLI.

The .der files are committed; rerunning embeds fresh notBefore
timestamps and signatures, so only regenerate when the fixture set
itself changes, and rerun compute_expected.py afterwards. Keys are
reused when present to keep the key tags stable.

Certificate sizes are tuned with an nsComment padding extension:
the personal certificate lands on exactly 1400 octets and the server
certificate on 1340, the sizes the transport tests reason about.
"""

import os
import subprocess
import sys

HERE = os.path.dirname(os.path.abspath(__file__))
os.chdir(HERE)

DAYS = "7300"
O = "/C=IT/O=Politecnico di Torino"


def run(*args):
    subprocess.run(args, check=True, capture_output=True)


def ensure_rsa_key(path):
    if not os.path.exists(path):
        run("openssl", "genrsa", "-out", path, "1024")


def ensure_ec_key(path):
    if not os.path.exists(path):
        run("openssl", "ecparam", "-name", "prime256v1", "-genkey", "-noout",
            "-out", path)


def selfsign(out, key, digest, subj, serial, exts):
    cmd = ["openssl", "req", "-x509", "-new", "-key", key, "-" + digest,
           "-subj", subj, "-set_serial", str(serial), "-days", DAYS,
           "-outform", "DER", "-out", out]
    for ext in exts:
        cmd += ["-addext", ext]
    run(*cmd)


def sized(out, target, make):
    pad = 64
    size = None
    for _ in range(10):
        if pad < 0:
            sys.exit(f"{out}: base certificate already larger than {target}")
        make(pad)
        size = os.path.getsize(out)
        if size == target:
            return
        pad += target - size
    sys.exit(f"{out}: could not reach {target} octets (stuck at {size})")


# Personal-style: 1024-bit RSA, MD5 signature, e-mail identity, 1400 octets.
ensure_rsa_key("personal.key.pem")
sized("personal.der", 1400,
      lambda pad: selfsign("personal.der", "personal.key.pem", "md5",
                           O + "/CN=Marius Marian", 1001,
                           ["subjectAltName=email:marinus.marian@polito.it",
                            "nsComment=" + "x" * pad]))

# Same subject and key re-issued under a new serial: identical key tag,
# different payload octets.
sized("personal_renewed.der", 1400,
      lambda pad: selfsign("personal_renewed.der", "personal.key.pem", "md5",
                           O + "/CN=Marius Marian", 1002,
                           ["subjectAltName=email:marinus.marian@polito.it",
                            "nsComment=" + "x" * pad]))

# Same subject, a second key: same owner name, different key tag.
ensure_rsa_key("personal2.key.pem")
sized("personal_second.der", 1400,
      lambda pad: selfsign("personal_second.der", "personal2.key.pem", "md5",
                           O + "/CN=Marius Marian", 1003,
                           ["subjectAltName=email:marinus.marian@polito.it",
                            "nsComment=" + "x" * pad]))

# Server-style: 1024-bit RSA, SHA1 signature, dNSName identity, 1340 octets.
ensure_rsa_key("server.key.pem")
sized("server.der", 1340,
      lambda pad: selfsign("server.der", "server.key.pem", "sha1",
                           O + "/CN=www.polito.it", 2001,
                           ["subjectAltName=DNS:www.polito.it",
                            "nsComment=" + "x" * pad]))

# Small: P-256 key, SHA256 signature (outside the classic algorithm
# table, so the CERT algorithm field is 0).
ensure_ec_key("small.key.pem")
selfsign("small.der", "small.key.pem", "sha256", O + "/CN=ns.polito.it", 3001,
         ["subjectAltName=DNS:ns.polito.it"])

# v1 certificate without extensions: parses, has a key tag, but no name
# can be derived for it.
ensure_rsa_key("legacy.key.pem")
run("openssl", "req", "-new", "-key", "legacy.key.pem",
    "-subj", O + "/CN=Legacy Unit", "-out", "legacy.csr")
run("openssl", "x509", "-req", "-in", "legacy.csr", "-signkey", "legacy.key.pem",
    "-md5", "-set_serial", "4001", "-days", DAYS,
    "-outform", "DER", "-out", "v1_legacy.der")
os.remove("legacy.csr")

# domainComponent-only subject for the DN mapping rule.
ensure_rsa_key("dc.key.pem")
selfsign("dc_subject.der", "dc.key.pem", "sha1", "/DC=it/DC=polito/DC=ca1", 5001, [])

for f in sorted(os.listdir(".")):
    if f.endswith(".der"):
        print(f"{f}: {os.path.getsize(f)} octets")
