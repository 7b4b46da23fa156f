#include "certdns/transport.hpp"

#include <netdb.h>
#include <poll.h>
#include <sys/socket.h>
#include <unistd.h>

#include <cerrno>
#include <cstring>

#include "certdns/errors.hpp"

namespace certdns {

namespace net {

void send_all(int fd, const std::uint8_t* data, std::size_t len)
{
    std::size_t off = 0;
    while (off < len) {
        ssize_t n = ::send(fd, data + off, len - off, MSG_NOSIGNAL);
        if (n < 0) {
            if (errno == EINTR)
                continue;
            throw LookupError(LookupError::Kind::Network,
                              std::string("send: ") + std::strerror(errno));
        }
        off += static_cast<std::size_t>(n);
    }
}

std::size_t recv_fully(int fd, std::uint8_t* buf, std::size_t len)
{
    std::size_t off = 0;
    while (off < len) {
        ssize_t n = ::recv(fd, buf + off, len - off, 0);
        if (n < 0) {
            if (errno == EINTR)
                continue;
            throw LookupError(LookupError::Kind::Network,
                              std::string("recv: ") + std::strerror(errno));
        }
        if (n == 0)
            break;
        off += static_cast<std::size_t>(n);
    }
    return off;
}

} // namespace net

struct SocketTransport::Addr {
    sockaddr_storage addr{};
    socklen_t len = 0;
    int family = 0;
    int socktype = 0;
    int protocol = 0;
};

namespace {

std::unique_ptr<SocketTransport::Addr> resolve(const std::string& host,
                                               std::uint16_t port, int socktype)
{
    addrinfo hints{};
    hints.ai_family = AF_UNSPEC;
    hints.ai_socktype = socktype;
    addrinfo* res = nullptr;
    int rc = ::getaddrinfo(host.c_str(), std::to_string(port).c_str(), &hints, &res);
    if (rc != 0)
        throw LookupError(LookupError::Kind::Network,
                          "cannot resolve " + host + ": " + gai_strerror(rc));
    auto out = std::make_unique<SocketTransport::Addr>();
    std::memcpy(&out->addr, res->ai_addr, res->ai_addrlen);
    out->len = static_cast<socklen_t>(res->ai_addrlen);
    out->family = res->ai_family;
    out->socktype = res->ai_socktype;
    out->protocol = res->ai_protocol;
    ::freeaddrinfo(res);
    return out;
}

} // namespace

SocketTransport::SocketTransport(const std::string& host, std::uint16_t port)
    : SocketTransport(host, port, port)
{
}

SocketTransport::SocketTransport(const std::string& host, std::uint16_t udp_port,
                                 std::uint16_t tcp_port)
    : udp_addr_(resolve(host, udp_port, SOCK_DGRAM)),
      tcp_addr_(resolve(host, tcp_port, SOCK_STREAM))
{
    udp_fd_ = ::socket(udp_addr_->family, udp_addr_->socktype, udp_addr_->protocol);
    if (udp_fd_ < 0)
        throw LookupError(LookupError::Kind::Network,
                          std::string("socket: ") + std::strerror(errno));
    if (::connect(udp_fd_, reinterpret_cast<const sockaddr*>(&udp_addr_->addr),
                  udp_addr_->len) != 0) {
        int err = errno;
        ::close(udp_fd_);
        udp_fd_ = -1;
        throw LookupError(LookupError::Kind::Network,
                          std::string("udp connect: ") + std::strerror(err));
    }
}

SocketTransport::~SocketTransport()
{
    if (udp_fd_ >= 0)
        ::close(udp_fd_);
}

void SocketTransport::udp_send(ByteView datagram)
{
    ssize_t n = ::send(udp_fd_, datagram.data(), datagram.size(), MSG_NOSIGNAL);
    if (n < 0 || static_cast<std::size_t>(n) != datagram.size())
        throw LookupError(LookupError::Kind::Network,
                          std::string("udp send: ") + std::strerror(errno));
}

std::optional<Bytes> SocketTransport::udp_recv(std::chrono::milliseconds timeout)
{
    pollfd pfd{udp_fd_, POLLIN, 0};
    int ms = timeout.count() > 0 ? static_cast<int>(timeout.count()) : 0;
    int rc = ::poll(&pfd, 1, ms);
    if (rc < 0)
        throw LookupError(LookupError::Kind::Network,
                          std::string("poll: ") + std::strerror(errno));
    if (rc == 0)
        return std::nullopt;
    Bytes buf(65535);
    ssize_t n = ::recv(udp_fd_, buf.data(), buf.size(), 0);
    if (n < 0)
        throw LookupError(LookupError::Kind::Network,
                          std::string("udp recv: ") + std::strerror(errno));
    buf.resize(static_cast<std::size_t>(n));
    return buf;
}

Bytes SocketTransport::tcp_exchange(ByteView message)
{
    if (message.size() > 0xFFFF)
        throw LookupError(LookupError::Kind::Network, "message too large for TCP framing");
    int fd = ::socket(tcp_addr_->family, tcp_addr_->socktype, tcp_addr_->protocol);
    if (fd < 0)
        throw LookupError(LookupError::Kind::Network,
                          std::string("socket: ") + std::strerror(errno));
    timeval tv{10, 0};
    ::setsockopt(fd, SOL_SOCKET, SO_RCVTIMEO, &tv, sizeof tv);
    ::setsockopt(fd, SOL_SOCKET, SO_SNDTIMEO, &tv, sizeof tv);
    try {
        if (::connect(fd, reinterpret_cast<const sockaddr*>(&tcp_addr_->addr),
                      tcp_addr_->len) != 0)
            throw LookupError(LookupError::Kind::Network,
                              std::string("tcp connect: ") + std::strerror(errno));
        std::uint8_t prefix[2] = {static_cast<std::uint8_t>(message.size() >> 8),
                                  static_cast<std::uint8_t>(message.size() & 0xFF)};
        net::send_all(fd, prefix, 2);
        net::send_all(fd, message.data(), message.size());

        std::uint8_t len_buf[2];
        if (net::recv_fully(fd, len_buf, 2) != 2)
            throw LookupError(LookupError::Kind::Network,
                              "connection closed before response length");
        std::size_t len = (static_cast<std::size_t>(len_buf[0]) << 8) | len_buf[1];
        Bytes response(len);
        if (net::recv_fully(fd, response.data(), len) != len)
            throw LookupError(LookupError::Kind::Network,
                              "connection closed mid-response");
        ::close(fd);
        return response;
    } catch (...) {
        ::close(fd);
        throw;
    }
}

} // namespace certdns
