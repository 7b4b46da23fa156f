#ifndef CERTDNS_TRANSPORT_HPP
#define CERTDNS_TRANSPORT_HPP

#include <chrono>
#include <cstdint>
#include <memory>
#include <optional>
#include <string>

#include "certdns/bytes.hpp"

namespace certdns {

namespace net {

// Both throw LookupError{Network}. recv_fully stops early only on EOF
// and returns the octet count actually read.
void send_all(int fd, const std::uint8_t* data, std::size_t len);
std::size_t recv_fully(int fd, std::uint8_t* buf, std::size_t len);

} // namespace net

// Client-side channel to one server. Tests substitute an in-memory
// implementation; production uses SocketTransport.
class ClientTransport {
public:
    virtual ~ClientTransport() = default;

    virtual void udp_send(ByteView datagram) = 0;

    // One datagram, or nullopt when `timeout` elapses first.
    virtual std::optional<Bytes> udp_recv(std::chrono::milliseconds timeout) = 0;

    // Fresh TCP connection: sends `message` with the 2-octet big-endian
    // length prefix, returns the server's first framed message.
    virtual Bytes tcp_exchange(ByteView message) = 0;
};

// UDP/TCP sockets to a host and port pair. The UDP socket is connected
// once and reused across send/recv; every tcp_exchange opens its own
// connection. Throws LookupError{Network} on socket failures.
class SocketTransport : public ClientTransport {
public:
    struct Addr;

    SocketTransport(const std::string& host, std::uint16_t port);
    // Servers on ephemeral ports may bind UDP and TCP differently.
    SocketTransport(const std::string& host, std::uint16_t udp_port,
                    std::uint16_t tcp_port);
    ~SocketTransport() override;

    SocketTransport(const SocketTransport&) = delete;
    SocketTransport& operator=(const SocketTransport&) = delete;

    void udp_send(ByteView datagram) override;
    std::optional<Bytes> udp_recv(std::chrono::milliseconds timeout) override;
    Bytes tcp_exchange(ByteView message) override;

private:
    std::unique_ptr<Addr> udp_addr_;
    std::unique_ptr<Addr> tcp_addr_;
    int udp_fd_ = -1;
};

// Decorator counting traffic through another transport; lets tests and
// the CLI verify how many datagrams and connections a lookup cost.
class CountingTransport : public ClientTransport {
public:
    explicit CountingTransport(std::shared_ptr<ClientTransport> inner)
        : inner_(std::move(inner))
    {
    }

    void udp_send(ByteView datagram) override
    {
        ++udp_sent_;
        inner_->udp_send(datagram);
    }

    std::optional<Bytes> udp_recv(std::chrono::milliseconds timeout) override
    {
        auto got = inner_->udp_recv(timeout);
        if (got)
            ++udp_received_;
        return got;
    }

    Bytes tcp_exchange(ByteView message) override
    {
        ++tcp_exchanges_;
        return inner_->tcp_exchange(message);
    }

    std::size_t udp_sent() const noexcept { return udp_sent_; }
    std::size_t udp_received() const noexcept { return udp_received_; }
    std::size_t tcp_exchanges() const noexcept { return tcp_exchanges_; }

private:
    std::shared_ptr<ClientTransport> inner_;
    std::size_t udp_sent_ = 0;
    std::size_t udp_received_ = 0;
    std::size_t tcp_exchanges_ = 0;
};

} // namespace certdns

#endif // CERTDNS_TRANSPORT_HPP
