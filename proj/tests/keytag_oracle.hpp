#ifndef CERTDNS_KEYTAG_ORACLE_HPP
#define CERTDNS_KEYTAG_ORACLE_HPP

// Independent transcription of the reference key-tag C routine, kept
// deliberately close to the original so it can serve as an oracle for
// the production implementation.

inline unsigned short reference_keytag(const unsigned char* key, unsigned int keysize)
{
    unsigned long ac;
    unsigned int i;

    for (ac = 0, i = 0; i < keysize; ++i)
        ac += (i & 1) ? key[i] : key[i] << 8;
    ac += (ac >> 16) & 0xFFFF;
    return (unsigned short)(ac & 0xFFFF);
}

#endif // CERTDNS_KEYTAG_ORACLE_HPP
