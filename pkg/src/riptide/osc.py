"""OSC 1.0 encoding and UDP output toward SuperDirt.

Only the sending half lives here; the test suite keeps its own decoder.
Everything is big-endian and padded to 4-byte boundaries. Supported type
tags: 'i' int32, 'f' float32, 's' string, 'd' float64.
"""

from __future__ import annotations

import logging
import math
import socket
import struct
from dataclasses import dataclass
from typing import Union

from .clock import TimedEvent

log = logging.getLogger("riptide")

# NTP's 1900 epoch vs unix 1970, in seconds.
NTP_EPOCH_OFFSET = 2208988800
# A bundle with this timetag means "act now".
IMMEDIATELY = 1

DEFAULT_HOST = "127.0.0.1"
DEFAULT_PORT = 57120


@dataclass(frozen=True)
class Message:
    address: str
    args: tuple  # of (type tag, value)

    def __init__(self, address, args=()):
        object.__setattr__(self, "address", address)
        object.__setattr__(self, "args", tuple(args))


@dataclass(frozen=True)
class Bundle:
    timetag: int  # 64-bit NTP fixed point
    elements: tuple

    def __init__(self, timetag, elements=()):
        object.__setattr__(self, "timetag", int(timetag))
        object.__setattr__(self, "elements", tuple(elements))


OscPacket = Union[Message, Bundle]


def _padded_string(s: str) -> bytes:
    raw = s.encode("utf-8")
    if b"\0" in raw:
        raise ValueError(f"OSC string may not contain NUL: {s!r}")
    raw += b"\0"
    return raw + b"\0" * (-len(raw) % 4)


def encode_message(m: Message) -> bytes:
    if not m.address.startswith("/"):
        raise ValueError(f"OSC address must start with '/': {m.address!r}")
    out = [_padded_string(m.address), _padded_string("," + "".join(tag for tag, _ in m.args))]
    for tag, value in m.args:
        if tag == "i":
            out.append(struct.pack(">i", value))
        elif tag == "f":
            out.append(struct.pack(">f", value))
        elif tag == "d":
            out.append(struct.pack(">d", value))
        elif tag == "s":
            out.append(_padded_string(value))
        else:
            raise ValueError(f"unsupported OSC type tag {tag!r}")
    return b"".join(out)


def encode_bundle(b: Bundle) -> bytes:
    out = [b"#bundle\0", struct.pack(">Q", b.timetag & 0xFFFFFFFFFFFFFFFF)]
    for el in b.elements:
        payload = encode_packet(el)
        out.append(struct.pack(">i", len(payload)))
        out.append(payload)
    return b"".join(out)


def encode_packet(p: OscPacket) -> bytes:
    return encode_bundle(p) if isinstance(p, Bundle) else encode_message(p)


def ntp_time(unix_seconds: float) -> int:
    """Unix seconds to 64-bit NTP 32.32 fixed point."""
    seconds = unix_seconds + NTP_EPOCH_OFFSET
    whole = math.floor(seconds)
    frac = round((seconds - whole) * (1 << 32))
    if frac == 1 << 32:
        whole += 1
        frac = 0
    return ((int(whole) << 32) | frac) & 0xFFFFFFFFFFFFFFFF


def _tag_for(key: str, value) -> str:
    if isinstance(value, bool):
        raise ValueError(f"cannot encode control {key!r}: booleans unsupported")
    if isinstance(value, int):
        return "i"
    if isinstance(value, float):
        return "f"
    if isinstance(value, str):
        return "s"
    raise ValueError(f"cannot encode control {key!r} of type {type(value).__name__}")


def to_dirt_message(e: TimedEvent, cps: float) -> Bundle:
    """The /dirt/play bundle for one timed event.

    Args go key,value alternating: cps, delta and cycle first, then the
    event's controls in insertion order.
    """
    args = [
        ("s", "cps"),
        ("f", float(cps)),
        ("s", "delta"),
        ("f", float(e.duration)),
        ("s", "cycle"),
        ("f", float(e.cycle)),
    ]
    for key, value in e.controls.items():
        args.append(("s", key))
        args.append((_tag_for(key, value), value))
    return Bundle(ntp_time(e.at_time), [Message("/dirt/play", args)])


def parse_host_port(text: str) -> tuple[str, int]:
    host, _, port = text.rpartition(":")
    if not host or not port.isascii() or not port.isdigit():
        raise ValueError(f"expected HOST:PORT, got {text!r}")
    return host, int(port)


class OscSender:
    """Fire-and-forget UDP sink; socket errors never stop the scheduler."""

    def __init__(self, host: str = DEFAULT_HOST, port: int = DEFAULT_PORT, cps: float = 0.5):
        self.addr = (host, port)
        self.cps = cps
        self.sock = socket.socket(socket.AF_INET, socket.SOCK_DGRAM)

    def __call__(self, events: list[TimedEvent]):
        for e in events:
            try:
                self.sock.sendto(encode_packet(to_dirt_message(e, self.cps)), self.addr)
            except (OSError, ValueError):
                log.exception("failed to send OSC packet")

    def close(self):
        self.sock.close()
