#include "certdns/server.hpp"

#include <arpa/inet.h>
#include <netdb.h>
#include <netinet/in.h>
#include <poll.h>
#include <sys/socket.h>
#include <sys/stat.h>
#include <unistd.h>

#include <atomic>
#include <cerrno>
#include <chrono>
#include <cstring>
#include <iostream>
#include <mutex>

#include "certdns/errors.hpp"
#include "certdns/transport.hpp"

namespace certdns {

DnsMessage answer(const DnsMessage& query, const Zone& zone,
                  std::size_t transport_budget, TransportKind transport)
{
    DnsMessage resp;
    resp.id = query.id;
    resp.flags.response = true;
    resp.flags.opcode = query.flags.opcode;
    resp.flags.recursion_desired = query.flags.recursion_desired;
    resp.question = query.question;
    if (query.edns) {
        std::size_t advertise = std::min<std::size_t>(transport_budget, 0xFFFF);
        resp.edns = EdnsInfo{static_cast<std::uint16_t>(std::max<std::size_t>(advertise, 512))};
    }

    if (query.flags.opcode != 0) {
        resp.flags.rcode = Rcode::NotImp;
        return resp;
    }

    const Question& q = *query.question;
    resp.flags.authoritative = true;

    if (!zone.name_exists(q.name)) {
        resp.flags.rcode = Rcode::NxDomain;
    } else if (q.qclass == kClassIn || q.qclass == rrtype::ANY) {
        bool apex = q.name == zone.origin();
        if (apex && (q.qtype == rrtype::SOA || q.qtype == rrtype::ANY))
            resp.answers.push_back(zone.soa_record());
        if (apex && q.qtype == rrtype::ANY)
            for (auto& ns : zone.ns_records())
                resp.answers.push_back(ns);
        if (q.qtype == rrtype::CERT || q.qtype == rrtype::ANY)
            for (const auto& e : zone.find(q.name))
                resp.answers.push_back(ResourceRecord{e.owner, rrtype::CERT, kClassIn,
                                                      e.ttl,
                                                      encode_cert_rdata(e.record)});
    }

    if (transport == TransportKind::Udp) {
        std::size_t advertised =
            query.edns ? std::max<std::size_t>(query.edns->udp_payload_size, 512) : 512;
        std::size_t budget = std::min(advertised, transport_budget);
        if (encode_message(resp).size() > budget) {
            resp.answers.clear();
            resp.authority.clear();
            resp.additional.clear();
            resp.flags.truncated = true;
        }
    }
    return resp;
}

struct Server::State {
    ServerConfig config;
    std::atomic<bool> stop{false};
    std::atomic<bool> running{false};
    int udp_fd = -1;
    int tcp_fd = -1;
    std::uint16_t udp_port = 0;
    std::uint16_t tcp_port = 0;

    mutable std::mutex zone_mutex;
    std::shared_ptr<const Zone> zone;
    timespec zone_mtime{};
    off_t zone_size = 0;

    std::shared_ptr<const Zone> snapshot() const
    {
        std::lock_guard<std::mutex> lock(zone_mutex);
        return zone;
    }
};

namespace {

int bind_socket(const std::string& host, std::uint16_t port, int socktype,
                std::uint16_t& bound_port)
{
    addrinfo hints{};
    hints.ai_family = AF_UNSPEC;
    hints.ai_socktype = socktype;
    hints.ai_flags = AI_PASSIVE;
    addrinfo* res = nullptr;
    int rc = ::getaddrinfo(host.c_str(), std::to_string(port).c_str(), &hints, &res);
    if (rc != 0)
        throw LookupError(LookupError::Kind::Network,
                          "cannot resolve listen address " + host + ": " +
                              gai_strerror(rc));
    int fd = ::socket(res->ai_family, res->ai_socktype, res->ai_protocol);
    if (fd < 0) {
        ::freeaddrinfo(res);
        throw LookupError(LookupError::Kind::Network,
                          std::string("socket: ") + std::strerror(errno));
    }
    int one = 1;
    ::setsockopt(fd, SOL_SOCKET, SO_REUSEADDR, &one, sizeof one);
    if (::bind(fd, res->ai_addr, res->ai_addrlen) != 0) {
        int err = errno;
        ::close(fd);
        ::freeaddrinfo(res);
        throw LookupError(LookupError::Kind::Network,
                          "cannot bind " + host + ":" + std::to_string(port) + ": " +
                              std::strerror(err));
    }
    ::freeaddrinfo(res);

    sockaddr_storage local{};
    socklen_t len = sizeof local;
    ::getsockname(fd, reinterpret_cast<sockaddr*>(&local), &len);
    if (local.ss_family == AF_INET)
        bound_port = ntohs(reinterpret_cast<sockaddr_in*>(&local)->sin_port);
    else
        bound_port = ntohs(reinterpret_cast<sockaddr_in6*>(&local)->sin6_port);
    return fd;
}

Bytes error_reply(ByteView datagram, Rcode rcode)
{
    if (datagram.size() < 12)
        return {};
    DnsMessage resp;
    resp.id = static_cast<std::uint16_t>((datagram[0] << 8) | datagram[1]);
    resp.flags.response = true;
    resp.flags.opcode = static_cast<std::uint8_t>((datagram[2] >> 3) & 0x0F);
    resp.flags.rcode = rcode;
    return encode_message(resp);
}

// Decodes and answers one message; empty result means "drop".
Bytes handle_query(const std::shared_ptr<Server::State>& state, ByteView wire,
                   TransportKind transport)
{
    DnsMessage query;
    try {
        query = decode_message(wire);
    } catch (const Error&) {
        return error_reply(wire, Rcode::FormErr);
    }
    if (query.flags.response)
        return {};
    if (!query.question)
        return error_reply(wire, Rcode::FormErr);
    try {
        auto zone = state->snapshot();
        DnsMessage resp =
            answer(query, *zone, state->config.max_udp_payload, transport);
        Bytes out = encode_message(resp);
        if (out.size() > 0xFFFF)
            return error_reply(wire, Rcode::ServFail);
        return out;
    } catch (const Error&) {
        return error_reply(wire, Rcode::ServFail);
    }
}

void udp_loop(std::shared_ptr<Server::State> state)
{
    std::vector<std::uint8_t> buf(65535);
    while (!state->stop) {
        pollfd pfd{state->udp_fd, POLLIN, 0};
        if (::poll(&pfd, 1, 200) <= 0)
            continue;
        sockaddr_storage peer{};
        socklen_t peer_len = sizeof peer;
        ssize_t n = ::recvfrom(state->udp_fd, buf.data(), buf.size(), 0,
                               reinterpret_cast<sockaddr*>(&peer), &peer_len);
        if (n <= 0)
            continue;
        Bytes reply = handle_query(
            state, ByteView(buf.data(), static_cast<std::size_t>(n)),
            TransportKind::Udp);
        if (!reply.empty())
            ::sendto(state->udp_fd, reply.data(), reply.size(), MSG_NOSIGNAL,
                     reinterpret_cast<sockaddr*>(&peer), peer_len);
    }
}

void tcp_conn(std::shared_ptr<Server::State> state, int fd)
{
    try {
        while (!state->stop) {
            std::uint8_t len_buf[2];
            if (net::recv_fully(fd, len_buf, 2) != 2)
                break;
            std::size_t len = (static_cast<std::size_t>(len_buf[0]) << 8) | len_buf[1];
            Bytes msg(len);
            if (net::recv_fully(fd, msg.data(), len) != len)
                break;
            Bytes reply = handle_query(state, msg, TransportKind::Tcp);
            if (reply.empty())
                break;
            std::uint8_t prefix[2] = {static_cast<std::uint8_t>(reply.size() >> 8),
                                      static_cast<std::uint8_t>(reply.size() & 0xFF)};
            net::send_all(fd, prefix, 2);
            net::send_all(fd, reply.data(), reply.size());
        }
    } catch (const Error&) {
    }
    ::close(fd);
}

void tcp_loop(std::shared_ptr<Server::State> state)
{
    while (!state->stop) {
        pollfd pfd{state->tcp_fd, POLLIN, 0};
        if (::poll(&pfd, 1, 200) <= 0)
            continue;
        int fd = ::accept(state->tcp_fd, nullptr, nullptr);
        if (fd < 0)
            continue;
        timeval tv{10, 0};
        ::setsockopt(fd, SOL_SOCKET, SO_RCVTIMEO, &tv, sizeof tv);
        ::setsockopt(fd, SOL_SOCKET, SO_SNDTIMEO, &tv, sizeof tv);
        std::thread(tcp_conn, state, fd).detach();
    }
}

void reload_loop(std::shared_ptr<Server::State> state)
{
    using namespace std::chrono_literals;
    int ticks = 0;
    while (!state->stop) {
        std::this_thread::sleep_for(100ms);
        if (++ticks < 5)
            continue;
        ticks = 0;
        struct stat st{};
        if (::stat(state->config.zone_path.c_str(), &st) != 0)
            continue;
        if (st.st_mtim.tv_sec == state->zone_mtime.tv_sec &&
            st.st_mtim.tv_nsec == state->zone_mtime.tv_nsec &&
            st.st_size == state->zone_size)
            continue;
        try {
            auto fresh = std::make_shared<const Zone>(load_zone(state->config.zone_path));
            std::lock_guard<std::mutex> lock(state->zone_mutex);
            if (fresh->serial() != state->zone->serial())
                state->zone = std::move(fresh);
            state->zone_mtime = st.st_mtim;
            state->zone_size = st.st_size;
        } catch (const Error& e) {
            std::cerr << "zone reload failed, keeping previous data: " << e.what()
                      << "\n";
        }
    }
}

} // namespace

Server::Server(ServerConfig config) : state_(std::make_shared<State>())
{
    state_->config = std::move(config);
}

Server::~Server()
{
    stop();
}

void Server::start()
{
    if (state_->running)
        return;
    if (state_->config.max_udp_payload < 512)
        throw Error("max UDP payload must be at least 512 octets");

    state_->zone =
        std::make_shared<const Zone>(load_zone(state_->config.zone_path));
    struct stat st{};
    if (::stat(state_->config.zone_path.c_str(), &st) == 0) {
        state_->zone_mtime = st.st_mtim;
        state_->zone_size = st.st_size;
    }

    state_->udp_fd = bind_socket(state_->config.listen_address, state_->config.port,
                                 SOCK_DGRAM, state_->udp_port);
    try {
        state_->tcp_fd = bind_socket(state_->config.listen_address,
                                     state_->config.port, SOCK_STREAM,
                                     state_->tcp_port);
        if (::listen(state_->tcp_fd, 16) != 0)
            throw LookupError(LookupError::Kind::Network,
                              std::string("listen: ") + std::strerror(errno));
    } catch (...) {
        ::close(state_->udp_fd);
        state_->udp_fd = -1;
        if (state_->tcp_fd >= 0) {
            ::close(state_->tcp_fd);
            state_->tcp_fd = -1;
        }
        throw;
    }

    state_->stop = false;
    state_->running = true;
    threads_.emplace_back(udp_loop, state_);
    threads_.emplace_back(tcp_loop, state_);
    threads_.emplace_back(reload_loop, state_);
}

void Server::stop()
{
    if (!state_->running)
        return;
    state_->stop = true;
    for (auto& t : threads_)
        if (t.joinable())
            t.join();
    threads_.clear();
    if (state_->udp_fd >= 0) {
        ::close(state_->udp_fd);
        state_->udp_fd = -1;
    }
    if (state_->tcp_fd >= 0) {
        ::close(state_->tcp_fd);
        state_->tcp_fd = -1;
    }
    state_->running = false;
}

bool Server::running() const noexcept
{
    return state_->running;
}

std::uint16_t Server::udp_port() const noexcept
{
    return state_->udp_port;
}

std::uint16_t Server::tcp_port() const noexcept
{
    return state_->tcp_port;
}

std::shared_ptr<const Zone> Server::zone_snapshot() const
{
    return state_->snapshot();
}

} // namespace certdns
