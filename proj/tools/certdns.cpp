#include <csignal>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <thread>

#include <CLI11.hpp>

#include "certdns/base64.hpp"
#include "certdns/errors.hpp"
#include "certdns/identity.hpp"
#include "certdns/keytag.hpp"
#include "certdns/naming.hpp"
#include "certdns/publisher.hpp"
#include "certdns/resolver.hpp"
#include "certdns/server.hpp"
#include "certdns/zone.hpp"

namespace {

volatile std::sig_atomic_t g_stop_requested = 0;

void on_signal(int)
{
    g_stop_requested = 1;
}

struct HostPort {
    std::string host;
    std::uint16_t port = 0;
};

// "host:port", "[v6addr]:port" or bare "host" with a default port.
HostPort parse_hostport(const std::string& text, std::uint16_t default_port)
{
    HostPort hp;
    hp.port = default_port;
    std::string rest = text;
    if (!rest.empty() && rest.front() == '[') {
        std::size_t close = rest.find(']');
        if (close == std::string::npos)
            throw certdns::Error("unterminated '[' in address \"" + text + "\"");
        hp.host = rest.substr(1, close - 1);
        rest = rest.substr(close + 1);
        if (rest.empty())
            return hp;
        if (rest.front() != ':')
            throw certdns::Error("bad address \"" + text + "\"");
        rest = rest.substr(1);
    } else {
        std::size_t colon = rest.rfind(':');
        if (colon == std::string::npos || rest.find(':') != colon) {
            hp.host = rest; // no port, or a bare IPv6 address
            return hp;
        }
        hp.host = rest.substr(0, colon);
        rest = rest.substr(colon + 1);
    }
    if (hp.host.empty())
        throw certdns::Error("empty host in address \"" + text + "\"");
    try {
        unsigned long port = std::stoul(rest);
        if (port == 0 || port > 0xFFFF)
            throw certdns::Error("port out of range in \"" + text + "\"");
        hp.port = static_cast<std::uint16_t>(port);
    } catch (const std::logic_error&) {
        throw certdns::Error("bad port in address \"" + text + "\"");
    }
    return hp;
}

certdns::NamingProfile profile_from_text(const std::string& text)
{
    if (text == "polito")
        return certdns::NamingProfile::Polito;
    if (text == "generic")
        return certdns::NamingProfile::Generic;
    throw certdns::Error("unknown profile \"" + text + "\" (use polito or generic)");
}

int cmd_publish(const std::string& cert_path, const std::string& zone_path,
                std::uint32_t ttl, const std::string& profile_text,
                const std::string& deny_path, const std::string& origin_text)
{
    certdns::Bytes der = certdns::load_certificate_file(cert_path);
    certdns::DenyList deny;
    if (!deny_path.empty())
        deny = certdns::DenyList::from_file(deny_path);
    certdns::ZoneEntry entry = certdns::build_entry(
        der, ttl, profile_from_text(profile_text), deny_path.empty() ? nullptr : &deny);

    certdns::Zone zone;
    if (std::filesystem::exists(zone_path)) {
        zone = certdns::load_zone(zone_path);
    } else {
        if (origin_text.empty())
            throw certdns::Error("zone file " + zone_path +
                                 " does not exist; pass --origin to create it");
        zone = certdns::Zone(certdns::DomainName::from_text(origin_text));
    }
    if (!zone.origin().is_root() && !entry.owner.is_within(zone.origin()))
        throw certdns::Error(entry.owner.to_text() + " is outside zone " +
                             zone.origin().to_text());

    bool replaced = zone.upsert(entry);
    certdns::store_zone(zone, zone_path);
    std::cout << (replaced ? "replaced " : "published ") << entry.owner.to_text()
              << " key tag " << entry.record.key_tag << " algorithm "
              << certdns::algorithm_to_text(entry.record.algorithm) << ", zone serial "
              << zone.serial() << "\n";
    return 0;
}

int cmd_remove(const std::string& owner_text, std::optional<std::uint16_t> key_tag,
               const std::string& zone_path)
{
    certdns::Zone zone = certdns::load_zone(zone_path);
    std::size_t removed =
        zone.remove(certdns::DomainName::from_text(owner_text), key_tag);
    certdns::store_zone(zone, zone_path);
    std::cout << "removed " << removed << (removed == 1 ? " entry" : " entries")
              << ", zone serial " << zone.serial() << "\n";
    return 0;
}

int cmd_keytag(const std::string& cert_path)
{
    certdns::Bytes der = certdns::load_certificate_file(cert_path);
    certdns::IdentitySummary id = certdns::extract_identity(der);
    std::cout << certdns::compute_keytag(id.spki_der) << "\n";
    return 0;
}

int cmd_map(const std::string& cert_path, const std::string& profile_text)
{
    certdns::Bytes der = certdns::load_certificate_file(cert_path);
    certdns::IdentitySummary id = certdns::extract_identity(der);
    certdns::NamingDecision d =
        certdns::map_identity(id, profile_from_text(profile_text));
    std::cout << d.owner.to_text() << " rule=" << certdns::to_string(d.rule_applied)
              << " source=" << certdns::to_string(d.source_field) << "\n";
    return 0;
}

int cmd_inspect(const std::string& cert_path)
{
    certdns::Bytes der = certdns::load_certificate_file(cert_path);
    certdns::IdentitySummary id = certdns::extract_identity(der);
    std::cout << certdns::describe_identity(id);
    return 0;
}

int cmd_serve(const std::string& listen_text, const std::string& zone_path,
              std::uint16_t max_udp)
{
    HostPort hp = parse_hostport(listen_text, 53);
    certdns::ServerConfig config;
    config.listen_address = hp.host;
    config.port = hp.port;
    config.zone_path = zone_path;
    config.max_udp_payload = max_udp;

    certdns::Server server(config);
    server.start();
    std::cout << "serving " << zone_path << " on " << hp.host << " udp/"
              << server.udp_port() << " tcp/" << server.tcp_port() << " (max UDP "
              << max_udp << ")\n";

    std::signal(SIGINT, on_signal);
    std::signal(SIGTERM, on_signal);
    while (!g_stop_requested)
        std::this_thread::sleep_for(std::chrono::milliseconds(100));
    std::cout << "shutting down\n";
    server.stop();
    return 0;
}

int cmd_fetch(const std::string& target, const std::string& server_text,
              std::optional<std::uint16_t> edns, bool no_edns, bool tcp_only,
              std::optional<std::uint16_t> key_tag, const std::string& out_dir)
{
    HostPort hp = parse_hostport(server_text, 53);
    auto transport = std::make_shared<certdns::SocketTransport>(hp.host, hp.port);
    certdns::Resolver resolver(transport);

    certdns::LookupRequest request;
    if (no_edns)
        request.edns_payload.reset();
    else if (edns)
        request.edns_payload = *edns;
    request.policy = tcp_only ? certdns::TransportPolicy::TcpOnly
                              : certdns::TransportPolicy::UdpThenTcp;
    request.key_tag_filter = key_tag;

    certdns::LookupResult result = certdns::fetch_certificates(resolver, target, request);

    for (const auto& record : result.records) {
        std::cout << result.owner.to_text() << " "
                  << certdns::cert_type_to_text(record.cert_type) << " "
                  << record.key_tag << " "
                  << certdns::algorithm_to_text(record.algorithm) << " "
                  << record.payload.size() << " octets\n";
        if (!out_dir.empty()) {
            std::filesystem::create_directories(out_dir);
            std::string file = out_dir + "/" + result.owner.to_text() + "." +
                               std::to_string(record.key_tag) + ".cer";
            std::ofstream out(file, std::ios::binary | std::ios::trunc);
            out.write(reinterpret_cast<const char*>(record.payload.data()),
                      static_cast<std::streamsize>(record.payload.size()));
            if (!out)
                throw certdns::Error("cannot write " + file);
            std::cout << "  wrote " << file << "\n";
        }
    }
    std::cout << result.records.size()
              << (result.records.size() == 1 ? " record" : " records") << " via "
              << (result.transport_used == certdns::TransportUsed::Udp ? "udp" : "tcp")
              << (result.retried_over_tcp ? " (after truncation)" : "") << ", message "
              << result.message_size << " octets\n";
    return 0;
}

} // namespace

int main(int argc, char** argv)
{
    CLI::App app{"DNS certificate repository toolkit"};
    app.require_subcommand(1);

    // publish
    std::string pub_cert, pub_zone, pub_profile = "generic", pub_deny, pub_origin;
    std::uint32_t pub_ttl = certdns::kDefaultTtl;
    auto* publish = app.add_subcommand("publish", "add a certificate to a zone file");
    publish->add_option("--cert", pub_cert, "certificate (DER or PEM)")
        ->required()
        ->check(CLI::ExistingFile);
    publish->add_option("--zone", pub_zone, "zone file to update")->required();
    publish->add_option("--ttl", pub_ttl, "record TTL in seconds");
    publish->add_option("--profile", pub_profile, "naming profile: generic or polito");
    publish->add_option("--deny-list", pub_deny, "file of owner names never published")
        ->check(CLI::ExistingFile);
    publish->add_option("--origin", pub_origin, "zone origin when creating a new file");

    // remove
    std::string rm_owner, rm_zone;
    std::optional<std::uint16_t> rm_keytag;
    auto* removecmd = app.add_subcommand("remove", "delete entries from a zone file");
    removecmd->add_option("--owner", rm_owner, "owner name to delete")->required();
    removecmd->add_option("--keytag", rm_keytag, "only the entry with this key tag");
    removecmd->add_option("--zone", rm_zone, "zone file to update")
        ->required()
        ->check(CLI::ExistingFile);

    // keytag
    std::string kt_cert;
    auto* keytag = app.add_subcommand("keytag", "print a certificate's key tag");
    keytag->add_option("cert", kt_cert, "certificate (DER or PEM)")
        ->required()
        ->check(CLI::ExistingFile);

    // map
    std::string map_cert, map_profile = "generic";
    auto* mapcmd = app.add_subcommand("map", "print the owner name for a certificate");
    mapcmd->add_option("cert", map_cert, "certificate (DER or PEM)")
        ->required()
        ->check(CLI::ExistingFile);
    mapcmd->add_option("--profile", map_profile, "naming profile: generic or polito");

    // inspect
    std::string ins_cert;
    auto* inspect = app.add_subcommand("inspect", "dump certificate identity fields");
    inspect->add_option("cert", ins_cert, "certificate (DER or PEM)")
        ->required()
        ->check(CLI::ExistingFile);

    // serve
    std::string srv_listen = "127.0.0.1:53", srv_zone;
    std::uint16_t srv_max_udp = 4096;
    auto* serve = app.add_subcommand("serve", "run the authoritative responder");
    serve->add_option("--listen", srv_listen, "address:port to bind");
    serve->add_option("--zone", srv_zone, "zone file to serve")
        ->required()
        ->check(CLI::ExistingFile);
    serve->add_option("--max-udp", srv_max_udp, "largest UDP response honored")
        ->check(CLI::Range(512, 65535));

    // fetch
    std::string fetch_target, fetch_server, fetch_out;
    std::optional<std::uint16_t> fetch_edns, fetch_keytag;
    bool fetch_no_edns = false, fetch_tcp_only = false;
    auto* fetch = app.add_subcommand("fetch", "retrieve certificates for a target");
    fetch->add_option("target", fetch_target, "e-mail address or host name")->required();
    fetch->add_option("--server", fetch_server, "repository server address:port")
        ->required();
    auto* edns_opt =
        fetch->add_option("--edns", fetch_edns, "EDNS0 payload size to advertise")
            ->check(CLI::Range(512, 65535));
    fetch->add_flag("--no-edns", fetch_no_edns, "classic 512-octet UDP limit")
        ->excludes(edns_opt);
    fetch->add_flag("--tcp-only", fetch_tcp_only, "skip UDP entirely");
    fetch->add_option("--keytag", fetch_keytag, "only records with this key tag");
    fetch->add_option("--out", fetch_out, "directory for <owner>.<keytag>.cer files");

    CLI11_PARSE(app, argc, argv);

    try {
        if (publish->parsed())
            return cmd_publish(pub_cert, pub_zone, pub_ttl, pub_profile, pub_deny,
                               pub_origin);
        if (removecmd->parsed())
            return cmd_remove(rm_owner, rm_keytag, rm_zone);
        if (keytag->parsed())
            return cmd_keytag(kt_cert);
        if (mapcmd->parsed())
            return cmd_map(map_cert, map_profile);
        if (inspect->parsed())
            return cmd_inspect(ins_cert);
        if (serve->parsed())
            return cmd_serve(srv_listen, srv_zone, srv_max_udp);
        if (fetch->parsed())
            return cmd_fetch(fetch_target, fetch_server, fetch_edns, fetch_no_edns,
                             fetch_tcp_only, fetch_keytag, fetch_out);
    } catch (const certdns::LookupError& e) {
        std::cerr << "certdns: " << e.what() << "\n";
        return e.kind() == certdns::LookupError::Kind::NxDomain ||
                       e.kind() == certdns::LookupError::Kind::NoData
                   ? 2
                   : 1;
    } catch (const std::exception& e) {
        std::cerr << "certdns: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
