#ifndef CERTDNS_ERRORS_HPP
#define CERTDNS_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace certdns {

// Base class for all certdns errors.
class Error : public std::runtime_error {
public:
    explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

// Malformed DNS wire data (messages, names, rdata).
class WireError : public Error {
public:
    enum class Kind {
        Truncated,        // input ends before a field is complete
        BadLabel,         // label length 0/64+, bad octets, name too long
        CompressionLoop,  // pointer chain does not strictly descend
        BadPointer,       // pointer target outside the message
        CountMismatch,    // header counts disagree with actual sections
        BadOpt,           // malformed or duplicated OPT pseudo-record
        FieldOverflow,    // value does not fit its wire field
        TrailingData,     // octets left over after the last section
    };

    WireError(Kind kind, const std::string& msg) : Error(msg), kind_(kind) {}
    Kind kind() const noexcept { return kind_; }

private:
    Kind kind_;
};

// Presentation-format (master file text) parse errors.
class TextError : public Error {
public:
    enum class Kind {
        BadSyntax,        // wrong token count, unbalanced parentheses
        UnknownMnemonic,  // type/algorithm mnemonic not in the tables
        BadInteger,       // not a number or out of field range
        BadBase64,        // invalid base64 payload
        BadName,          // invalid domain name text
    };

    TextError(Kind kind, const std::string& msg) : Error(msg), kind_(kind) {}
    Kind kind() const noexcept { return kind_; }

private:
    Kind kind_;
};

// ASN.1/DER structure errors from the certificate walker.
class DerError : public Error {
public:
    enum class Kind {
        Truncated,            // element extends past the input
        BadTag,               // unexpected tag for the structure position
        BadLength,            // unparsable or indefinite length
        NotACertificate,      // outer structure is not a Certificate
        UnsupportedEncoding,  // BMPString/T61String subject value
    };

    DerError(Kind kind, const std::string& msg) : Error(msg), kind_(kind) {}
    Kind kind() const noexcept { return kind_; }

private:
    Kind kind_;
};

// Subject-to-owner-name mapping failures.
class NamingError : public Error {
public:
    enum class Kind {
        BadEmail,         // zero or multiple '@', empty parts, quoting
        BadIpLength,      // not 4 or 16 octets
        BadUri,           // no host could be extracted
        NoDcComponents,   // DN carries no domainComponent attributes
        NoNameDerivable,  // no rule applies to the identity
        BadName,          // derived name violates domain name limits
    };

    NamingError(Kind kind, const std::string& msg) : Error(msg), kind_(kind) {}
    Kind kind() const noexcept { return kind_; }

private:
    Kind kind_;
};

// Zone maintenance and publishing errors.
class ZoneError : public Error {
public:
    enum class Kind {
        ParseFailed,   // zone file text is not in the emitted dialect
        NotFound,      // remove() matched nothing
        Denied,        // owner name is on the deny list
        Io,            // file could not be read or replaced
    };

    ZoneError(Kind kind, const std::string& msg) : Error(msg), kind_(kind) {}
    Kind kind() const noexcept { return kind_; }

private:
    Kind kind_;
};

// Resolver-side lookup failures.
class LookupError : public Error {
public:
    enum class Kind {
        Timeout,           // no matching response within the retry budget
        NxDomain,          // server says the name does not exist
        NoData,            // name exists but no CERT records
        ServerFailure,     // non-zero rcode other than NXDOMAIN
        MalformedResponse, // response failed to decode
        Network,           // socket-level failure
    };

    LookupError(Kind kind, const std::string& msg) : Error(msg), kind_(kind) {}
    Kind kind() const noexcept { return kind_; }

private:
    Kind kind_;
};

} // namespace certdns

#endif // CERTDNS_ERRORS_HPP
