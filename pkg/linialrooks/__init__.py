"""LinialRooks: exact rook theory for Linial boards, plane k-ary trees and truncated affine arrangements."""

__version__ = "1.0.0"
