"""Independent OSC 1.0 decoder, used as the round-trip oracle.

Written directly from the wire format rules: big-endian, every field
padded to a 4-byte boundary, strings NUL-terminated, bundles introduced
by "#bundle\\0" with a 64-bit timetag and length-prefixed elements. It
shares no code with the package encoder on purpose.
"""

import struct


class DecodeError(Exception):
    pass


def _read_string(data: bytes, i: int) -> tuple[str, int]:
    end = data.index(b"\0", i)
    s = data[i:end].decode("utf-8")
    # consume the NUL and pad to the next 4-byte boundary
    length = end - i + 1
    padded = length + (-length % 4)
    j = i + padded
    if j > len(data):
        raise DecodeError("string runs past end of packet")
    if data[end:j].strip(b"\0"):
        raise DecodeError("nonzero padding after string")
    return s, j


def decode_packet(data: bytes):
    if len(data) % 4 != 0:
        raise DecodeError(f"packet length {len(data)} not a multiple of 4")
    value, i = _decode(data, 0, len(data))
    if i != len(data):
        raise DecodeError(f"trailing bytes: consumed {i} of {len(data)}")
    return value


def _decode(data: bytes, i: int, end: int):
    if data[i : i + 8] == b"#bundle\0":
        return _decode_bundle(data, i, end)
    return _decode_message(data, i, end)


def _decode_bundle(data: bytes, i: int, end: int):
    i += 8
    (timetag,) = struct.unpack_from(">Q", data, i)
    i += 8
    elements = []
    while i < end:
        (size,) = struct.unpack_from(">i", data, i)
        i += 4
        if size < 0 or size % 4 != 0 or i + size > end:
            raise DecodeError(f"bad bundle element size {size}")
        el, j = _decode(data, i, i + size)
        if j != i + size:
            raise DecodeError("element did not fill its declared size")
        elements.append(el)
        i += size
    return ("bundle", timetag, elements), i


def _decode_message(data: bytes, i: int, end: int):
    address, i = _read_string(data, i)
    if not address.startswith("/"):
        raise DecodeError(f"address must start with '/', got {address!r}")
    tags, i = _read_string(data, i)
    if not tags.startswith(","):
        raise DecodeError(f"type tag string must start with ',', got {tags!r}")
    args = []
    for tag in tags[1:]:
        if tag == "i":
            (v,) = struct.unpack_from(">i", data, i)
            i += 4
        elif tag == "f":
            (v,) = struct.unpack_from(">f", data, i)
            i += 4
        elif tag == "d":
            (v,) = struct.unpack_from(">d", data, i)
            i += 8
        elif tag == "s":
            v, i = _read_string(data, i)
        else:
            raise DecodeError(f"unsupported type tag {tag!r}")
        if i > end:
            raise DecodeError("argument runs past end of packet")
        args.append((tag, v))
    return ("message", address, args), i
