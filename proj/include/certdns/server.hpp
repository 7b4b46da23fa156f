#ifndef CERTDNS_SERVER_HPP
#define CERTDNS_SERVER_HPP

#include <cstdint>
#include <memory>
#include <string>
#include <thread>
#include <vector>

#include "certdns/message.hpp"
#include "certdns/zone.hpp"

namespace certdns {

enum class TransportKind { Udp, Tcp };

struct ServerConfig {
    std::string listen_address = "127.0.0.1";
    std::uint16_t port = 53; // 0 picks ephemeral ports (UDP/TCP may differ)
    std::string zone_path;
    std::uint16_t max_udp_payload = 4096; // server-side cap, at least 512
};

// Builds the authoritative response to one query against a zone
// snapshot. UDP responses that would exceed the effective budget
// (min of the client's advertised EDNS0 size or 512, and
// transport_budget) come back with TC set and an empty answer section;
// TCP never truncates. The query must carry exactly one question.
DnsMessage answer(const DnsMessage& query, const Zone& zone,
                  std::size_t transport_budget, TransportKind transport);

// UDP+TCP responder for one zone file. start() binds and spawns the
// service threads; the zone file is re-read when its modification time
// or size changes and swapped in when the SOA serial differs.
class Server {
public:
    struct State;

    explicit Server(ServerConfig config);
    ~Server();

    Server(const Server&) = delete;
    Server& operator=(const Server&) = delete;

    // Throws ZoneError on an unreadable zone and LookupError{Network}
    // on bind failures.
    void start();
    void stop();

    bool running() const noexcept;
    std::uint16_t udp_port() const noexcept;
    std::uint16_t tcp_port() const noexcept;
    std::shared_ptr<const Zone> zone_snapshot() const;

private:
    std::shared_ptr<State> state_;
    std::vector<std::thread> threads_;
};

} // namespace certdns

#endif // CERTDNS_SERVER_HPP
