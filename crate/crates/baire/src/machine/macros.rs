//! The macro library: reusable code generators over the assembler.
//!
//! Heads cannot sense the left end of a tape, so every reusable routine
//! leans on two content conventions:
//!
//! * **value tape** — cell 0 is kept blank as a sentinel, content occupies
//!   cells `1..=len` contiguously, and the head is *parked* on cell 0 between
//!   macro calls. Rewinding is then a plain "move left until blank".
//! * **stack tape** — same layout, but the head parks on the first blank
//!   after the content, so pushing and popping at the end cost O(1). A stack
//!   tape must be initialized once with [`stack_init`].
//!
//! The input, output, and oracle tapes are *prefix tapes*: content starts at
//! cell 0 (this is forced for the oracle tape, whose query is read from cell
//! 0 up to the first blank). Prefix tapes cannot be rewound blindly; macros
//! that walk them either erase on the way back ([`erase_back`]) or mirror
//! the distance onto a value tape first ([`measure_input`]) and walk that
//! mirror home.
//!
//! Binary counters live on value tapes least-significant-bit-first: cell 1
//! holds the lowest bit. Trailing zeros are legal; the empty content denotes
//! zero. [`bin_inc`] on `111` yields `0001`.
//!
//! Flags are value tapes whose cell 1 is either blank (clear) or `1` (set).
//!
//! Every macro documents its pre/post conditions on heads and contents; the
//! unit tests pin them down cell by cell, and the expansion *costs* of the
//! file-format macro set are frozen as exact functions of operand lengths in
//! [`super::text`].

use super::asm::{Asm, Target};
use super::{Dir, Sym, Tape};
use crate::poly::UniPoly;

use Dir::{Left, Right};
use Sym::{Blank, One, Zero};

const BITS: [Sym; 2] = [Zero, One];

/// Move left until a blank is scanned. From anywhere on or just past the
/// content of a value tape this parks the head on the sentinel.
pub fn rewind(a: &mut Asm, t: Tape) {
    a.move_(t, Left);
    a.while_in(t, &BITS, |a| a.move_(t, Left));
}

/// Move right to the first blank at or after the current position.
pub fn to_end(a: &mut Asm, t: Tape) {
    a.while_in(t, &BITS, |a| a.move_(t, Right));
}

/// From the first blank after a contiguous block, erase the block walking
/// left. Ends on cell 0 for blocks starting at cell 0 or 1.
pub fn erase_back(a: &mut Asm, t: Tape) {
    a.move_(t, Left);
    a.while_in(t, &BITS, |a| {
        a.write(t, Blank);
        a.move_(t, Left);
    });
}

/// Erase a parked value tape. Post: empty, parked.
pub fn erase_value(a: &mut Asm, t: Tape) {
    a.move_(t, Right);
    to_end(a, t);
    erase_back(a, t);
}

/// Erase a prefix tape whose head is on cell 0. Post: empty, head on cell 0.
pub fn erase_prefix(a: &mut Asm, t: Tape) {
    to_end(a, t);
    erase_back(a, t);
}

/// Write a literal at the current head, moving right; the head ends just
/// past the last written symbol.
pub fn write_lit(a: &mut Asm, t: Tape, bits: &[Sym]) {
    for &s in bits {
        a.write(t, s);
        a.move_(t, Right);
    }
}

/// Append one `0` to a parked value tape. Post: parked. Costs O(len).
pub fn append_zero_value(a: &mut Asm, t: Tape) {
    a.move_(t, Right);
    to_end(a, t);
    a.write(t, Zero);
    rewind(a, t);
}

/// Copy a parked value tape onto an empty one. Post: both parked.
pub fn copy_value(a: &mut Asm, src: Tape, dst: Tape) {
    a.move_(src, Right);
    a.move_(dst, Right);
    a.while_in(src, &BITS, |a| {
        a.if3(
            src,
            |a| a.write(dst, Zero),
            |a| a.write(dst, One),
            |_| {},
        );
        a.move_(src, Right);
        a.move_(dst, Right);
    });
    rewind(a, src);
    rewind(a, dst);
}

/// Copy a parked value tape onto an empty prefix tape whose head is on cell
/// 0. Post: src parked; dst content at cells 0.., dst head just past it.
pub fn copy_value_to_prefix(a: &mut Asm, src: Tape, dst: Tape) {
    a.move_(src, Right);
    a.while_in(src, &BITS, |a| {
        a.if3(
            src,
            |a| a.write(dst, Zero),
            |a| a.write(dst, One),
            |_| {},
        );
        a.move_(src, Right);
        a.move_(dst, Right);
    });
    rewind(a, src);
}

/// Copy a prefix tape (head on cell 0) into an empty value tape. Post: dst
/// parked; src head at the first blank past its content (not restored).
pub fn copy_prefix_to_value(a: &mut Asm, src: Tape, dst: Tape) {
    a.while_in(src, &BITS, |a| {
        a.move_(dst, Right);
        a.if3(
            src,
            |a| a.write(dst, Zero),
            |a| a.write(dst, One),
            |_| {},
        );
        a.move_(src, Right);
    });
    rewind(a, dst);
}

/// Pose the query held on a parked value tape: the oracle tape (empty, head
/// on cell 0) receives the query written backwards so the head lands on cell
/// 0, then the query instruction runs. Post: oracle tape holds the answer
/// with its head on cell 0; the query tape is parked and unchanged.
pub fn query_from_value(a: &mut Asm, w: Tape) {
    let o = Tape::Oracle;
    a.move_(w, Right);
    a.while_in(w, &BITS, |a| {
        a.move_(w, Right);
        a.move_(o, Right);
    });
    a.move_(o, Left);
    a.move_(w, Left);
    a.while_in(w, &BITS, |a| {
        a.if3(w, |a| a.write(o, Zero), |a| a.write(o, One), |_| {});
        a.move_(w, Left);
        a.move_(o, Left);
    });
    a.query();
}

/// Consume the oracle answer (head on cell 0) into a running maximum: pad
/// the value tape `x` with zeros up to the answer length, then erase the
/// answer. Post: `x = 0^max(|x|, |answer|)` parked; oracle tape empty, head
/// on cell 0.
pub fn absorb_answer_max(a: &mut Asm, x: Tape) {
    let o = Tape::Oracle;
    a.while_in(o, &BITS, |a| {
        a.move_(x, Right);
        a.if3(x, |_| {}, |_| {}, |a| a.write(x, Zero));
        a.move_(o, Right);
    });
    rewind(a, x);
    erase_back(a, o);
}

/// Scan a prefix tape (head on cell 0) mirroring its length into the
/// transient value tape `u` and counting it into the binary counter `len`,
/// then walk the mirror back so the scanned head returns to cell 0. Post:
/// `t` head on cell 0, content untouched; `u` empty, head on cell 0;
/// `len += |content|` (parked).
pub fn measure_prefix(a: &mut Asm, t: Tape, u: Tape, len: Tape) {
    a.while_in(t, &BITS, |a| {
        a.move_(u, Right);
        a.write(u, Zero);
        bin_inc(a, len);
        a.move_(t, Right);
    });
    a.while_in(u, &BITS, |a| {
        a.write(u, Blank);
        a.move_(u, Left);
        a.move_(t, Left);
    });
}

/// [`measure_prefix`] on the input tape.
pub fn measure_input(a: &mut Asm, u: Tape, len: Tape) {
    measure_prefix(a, Tape::Input, u, len);
}

/// Count the oracle answer (head on cell 0) into the binary counter `len`
/// and erase it. Post: oracle tape empty, head on cell 0.
pub fn measure_and_erase_answer(a: &mut Asm, len: Tape) {
    let o = Tape::Oracle;
    a.while_in(o, &BITS, |a| {
        bin_inc(a, len);
        a.move_(o, Right);
    });
    erase_back(a, o);
}

/// Copy one prefix tape onto another (both heads on cell 0, `dst` empty),
/// mirroring the length onto the value tape `u` and walking everything back.
/// Post: all three heads on cell 0; `u` empty.
pub fn copy_prefix_and_return(a: &mut Asm, src: Tape, dst: Tape, u: Tape) {
    a.while_in(src, &BITS, |a| {
        a.if3(
            src,
            |a| a.write(dst, Zero),
            |a| a.write(dst, One),
            |_| {},
        );
        a.move_(u, Right);
        a.write(u, Zero);
        a.move_(src, Right);
        a.move_(dst, Right);
    });
    a.while_in(u, &BITS, |a| {
        a.write(u, Blank);
        a.move_(u, Left);
        a.move_(src, Left);
        a.move_(dst, Left);
    });
}

// =============================================================================
// Flags
// =============================================================================

pub fn flag_set(a: &mut Asm, f: Tape) {
    a.move_(f, Right);
    a.write(f, One);
    a.move_(f, Left);
}

pub fn flag_clear(a: &mut Asm, f: Tape) {
    a.move_(f, Right);
    a.write(f, Blank);
    a.move_(f, Left);
}

/// Branch on a flag tape, leaving it parked before either arm runs. A blank
/// cell counts as clear.
pub fn if_flag(
    a: &mut Asm,
    f: Tape,
    then_arm: impl FnOnce(&mut Asm),
    else_arm: impl FnOnce(&mut Asm),
) {
    let l_then = a.new_label();
    let l_else = a.new_label();
    let l_end = a.new_label();
    a.move_(f, Right);
    a.branch(f, Target::L(l_else), Target::L(l_then), Target::L(l_else));
    a.bind(l_then);
    a.move_(f, Left);
    then_arm(a);
    a.goto(l_end);
    a.bind(l_else);
    a.move_(f, Left);
    else_arm(a);
    a.bind(l_end);
}

// Used where a branch arm cannot be reached by the surrounding discipline;
// it emits nothing.
fn unreachable_blank_arm() {}

// =============================================================================
// Binary counters (LSB-first value tapes)
// =============================================================================

/// Increment a binary counter. `111` becomes `0001`.
pub fn bin_inc(a: &mut Asm, t: Tape) {
    a.move_(t, Right);
    a.while_in(t, &[One], |a| {
        a.write(t, Zero);
        a.move_(t, Right);
    });
    a.write(t, One);
    rewind(a, t);
}

/// Decrement a binary counter, or set the flag if it was zero (leaving the
/// counter unchanged). The borrow walk is amortized O(1) per call.
pub fn bin_dec_or_flag(a: &mut Asm, t: Tape, f: Tape) {
    a.move_(t, Right);
    a.while_in(t, &[Zero], |a| {
        a.write(t, One);
        a.move_(t, Right);
    });
    a.if3(
        t,
        |_| unreachable_blank_arm(), // the walk only stops on One or Blank
        |a| {
            a.write(t, Zero);
            rewind(a, t);
        },
        |a| {
            // The counter was zero: undo the flipped cells and raise the flag.
            a.move_(t, Left);
            a.while_in(t, &[One], |a| {
                a.write(t, Zero);
                a.move_(t, Left);
            });
            flag_set(a, f);
        },
    );
}

/// Step a value tape through the canonical enumeration of all strings:
/// `ε, 0, 1, 00, 10, 01, 11, 000, ...` — a binary increment whose overflow
/// grows the length and resets to all zeros instead of extending with a one.
pub fn enum_inc(a: &mut Asm, t: Tape) {
    a.move_(t, Right);
    a.while_in(t, &[One], |a| {
        a.write(t, Zero);
        a.move_(t, Right);
    });
    a.if3(
        t,
        |a| a.write(t, One),
        |_| unreachable_blank_arm(),
        |a| a.write(t, Zero),
    );
    rewind(a, t);
}

/// Write a literal value into an empty binary counter. Post: parked.
pub fn bin_write_lit(a: &mut Asm, t: Tape, value: u64) {
    a.move_(t, Right);
    let mut v = value;
    while v > 0 {
        a.write(t, if v & 1 == 1 { One } else { Zero });
        a.move_(t, Right);
        v >>= 1;
    }
    rewind(a, t);
}

/// `dst += src` for binary counters; both parked before and after.
pub fn bin_add(a: &mut Asm, src: Tape, dst: Tape) {
    a.move_(src, Right);
    a.move_(dst, Right);
    let no_carry = a.new_label();
    let carry = a.new_label();
    let done = a.new_label();

    let adv = |a: &mut Asm| {
        a.move_(src, Right);
        a.move_(dst, Right);
    };

    a.bind(no_carry);
    a.if3(
        src,
        |a| {
            // src bit 0: dst keeps its bit (made explicit if blank).
            a.if3(dst, |_| {}, |_| {}, |a| a.write(dst, Zero));
            adv(a);
            a.goto(no_carry);
        },
        |a| {
            a.if3(
                dst,
                |a| {
                    a.write(dst, One);
                    adv(a);
                    a.goto(no_carry);
                },
                |a| {
                    a.write(dst, Zero);
                    adv(a);
                    a.goto(carry);
                },
                |a| {
                    a.write(dst, One);
                    adv(a);
                    a.goto(no_carry);
                },
            );
        },
        |a| a.goto(done),
    );
    a.bind(carry);
    a.if3(
        src,
        |a| {
            a.if3(
                dst,
                |a| {
                    a.write(dst, One);
                    adv(a);
                    a.goto(no_carry);
                },
                |a| {
                    a.write(dst, Zero);
                    adv(a);
                    a.goto(carry);
                },
                |a| {
                    a.write(dst, One);
                    adv(a);
                    a.goto(no_carry);
                },
            );
        },
        |a| {
            a.if3(
                dst,
                |a| {
                    a.write(dst, Zero);
                    adv(a);
                    a.goto(carry);
                },
                |a| {
                    a.write(dst, One);
                    adv(a);
                    a.goto(carry);
                },
                |a| {
                    a.write(dst, Zero);
                    adv(a);
                    a.goto(carry);
                },
            );
        },
        |a| {
            // src exhausted with a live carry: propagate through dst.
            let prop = a.new_label();
            a.bind(prop);
            a.if3(
                dst,
                |a| {
                    a.write(dst, One);
                    a.goto(done);
                },
                |a| {
                    a.write(dst, Zero);
                    a.move_(dst, Right);
                    a.goto(prop);
                },
                |a| {
                    a.write(dst, One);
                    a.goto(done);
                },
            );
        },
    );
    a.bind(done);
    rewind(a, src);
    rewind(a, dst);
}

/// `dst -= src` for binary counters; requires `dst >= src` (documented
/// precondition; on violation the result silently truncates at zero weight).
pub fn bin_sub(a: &mut Asm, src: Tape, dst: Tape) {
    a.move_(src, Right);
    a.move_(dst, Right);
    let no_borrow = a.new_label();
    let borrow = a.new_label();
    let done = a.new_label();

    let adv = |a: &mut Asm| {
        a.move_(src, Right);
        a.move_(dst, Right);
    };

    a.bind(no_borrow);
    a.if3(
        src,
        |a| {
            a.if3(dst, |_| {}, |_| {}, |a| a.write(dst, Zero));
            adv(a);
            a.goto(no_borrow);
        },
        |a| {
            a.if3(
                dst,
                |a| {
                    a.write(dst, One);
                    adv(a);
                    a.goto(borrow);
                },
                |a| {
                    a.write(dst, Zero);
                    adv(a);
                    a.goto(no_borrow);
                },
                |a| {
                    a.write(dst, One);
                    adv(a);
                    a.goto(borrow);
                },
            );
        },
        |a| a.goto(done),
    );
    a.bind(borrow);
    a.if3(
        src,
        |a| {
            a.if3(
                dst,
                |a| {
                    a.write(dst, One);
                    adv(a);
                    a.goto(borrow);
                },
                |a| {
                    a.write(dst, Zero);
                    adv(a);
                    a.goto(no_borrow);
                },
                |a| {
                    a.write(dst, One);
                    adv(a);
                    a.goto(borrow);
                },
            );
        },
        |a| {
            a.if3(
                dst,
                |a| {
                    a.write(dst, Zero);
                    adv(a);
                    a.goto(borrow);
                },
                |a| {
                    a.write(dst, One);
                    adv(a);
                    a.goto(borrow);
                },
                |a| {
                    a.write(dst, Zero);
                    adv(a);
                    a.goto(borrow);
                },
            );
        },
        |a| {
            // src exhausted with a live borrow: propagate through dst.
            let prop = a.new_label();
            a.bind(prop);
            a.if3(
                dst,
                |a| {
                    a.write(dst, One);
                    a.move_(dst, Right);
                    a.goto(prop);
                },
                |a| {
                    a.write(dst, Zero);
                    a.goto(done);
                },
                |a| a.goto(done), // underflow: precondition violated
            );
        },
    );
    a.bind(done);
    rewind(a, src);
    rewind(a, dst);
}

/// Set the flag iff `x > y` as binary counters. Walks both LSB to MSB; the
/// most significant differing bit decides, so the running state is simply
/// overwritten at each difference.
pub fn bin_cmp_gt(a: &mut Asm, x: Tape, y: Tape, f: Tape) {
    flag_clear(a, f);
    a.move_(x, Right);
    a.move_(y, Right);
    let s_eq = a.new_label();
    let s_gt = a.new_label();
    let s_lt = a.new_label();
    let out_gt = a.new_label();
    let out_le = a.new_label();
    let done = a.new_label();

    // One comparison block per state; `keep` is where ties go, `exit` fires
    // when both tapes are exhausted.
    let emit_state = |a: &mut Asm, this: super::asm::Label, exit: super::asm::Label| {
        let adv = |a: &mut Asm| {
            a.move_(x, Right);
            a.move_(y, Right);
        };
        a.bind(this);
        a.if3(
            x,
            |a| {
                // x bit 0 (explicit)
                a.if3(
                    y,
                    |a| {
                        adv(a);
                        a.goto(this);
                    },
                    |a| {
                        adv(a);
                        a.goto(s_lt);
                    },
                    |a| {
                        adv(a);
                        a.goto(this);
                    },
                );
            },
            |a| {
                // x bit 1
                a.if3(
                    y,
                    |a| {
                        adv(a);
                        a.goto(s_gt);
                    },
                    |a| {
                        adv(a);
                        a.goto(this);
                    },
                    |a| {
                        adv(a);
                        a.goto(s_gt);
                    },
                );
            },
            |a| {
                // x exhausted (bit 0), but y may continue.
                a.if3(
                    y,
                    |a| {
                        adv(a);
                        a.goto(this);
                    },
                    |a| {
                        adv(a);
                        a.goto(s_lt);
                    },
                    |a| a.goto(exit),
                );
            },
        );
    };
    emit_state(a, s_eq, out_le);
    emit_state(a, s_gt, out_gt);
    emit_state(a, s_lt, out_le);

    a.bind(out_gt);
    flag_set(a, f);
    a.goto(done);
    a.bind(out_le);
    a.bind(done);
    rewind(a, x);
    rewind(a, y);
}

/// Shift a binary counter one bit up (multiply by two): contents move one
/// cell right and cell 1 becomes `0`. Post: parked.
pub fn bin_shl(a: &mut Asm, t: Tape) {
    a.move_(t, Right);
    to_end(a, t);
    // Invariant: head one past the next cell to copy.
    let top = a.new_label();
    let done = a.new_label();
    a.bind(top);
    a.move_(t, Left);
    a.if3(
        t,
        |a| {
            a.move_(t, Right);
            a.write(t, Zero);
            a.move_(t, Left);
            a.goto(top);
        },
        |a| {
            a.move_(t, Right);
            a.write(t, One);
            a.move_(t, Left);
            a.goto(top);
        },
        |a| {
            // Sentinel reached: overwrite the stale low cell with the fresh
            // zero (on an empty counter this writes a harmless explicit 0).
            a.move_(t, Right);
            a.write(t, Zero);
            a.move_(t, Left);
            a.goto(done);
        },
    );
    a.bind(done);
}

/// `out := x * y` by shift-and-add; `out` and the scratch must be empty.
/// Post: all parked, scratch empty again, `x` and `y` unchanged.
pub fn bin_mul(a: &mut Asm, x: Tape, y: Tape, out: Tape, scratch: Tape) {
    copy_value(a, x, scratch);
    a.move_(y, Right);
    let top = a.new_label();
    let done = a.new_label();
    a.bind(top);
    a.if3(
        y,
        |a| {
            bin_shl(a, scratch);
            a.move_(y, Right);
            a.goto(top);
        },
        |a| {
            bin_add(a, scratch, out);
            bin_shl(a, scratch);
            a.move_(y, Right);
            a.goto(top);
        },
        |a| a.goto(done),
    );
    a.bind(done);
    rewind(a, y);
    erase_value(a, scratch);
}

/// Evaluate a fixed univariate polynomial on a binary counter by Horner's
/// rule: `out := p(x)`. `out`, `s1`, `s2` must be empty; `x` is preserved.
pub fn eval_unipoly(a: &mut Asm, p: &UniPoly, x: Tape, out: Tape, s1: Tape, s2: Tape) {
    let coeffs = p.coeffs();
    if coeffs.is_empty() {
        return; // the zero polynomial: out stays empty
    }
    bin_write_lit(a, out, coeffs[coeffs.len() - 1]);
    for &c in coeffs.iter().rev().skip(1) {
        // out := out * x
        bin_mul(a, out, x, s2, s1);
        erase_value(a, out);
        copy_value(a, s2, out);
        erase_value(a, s2);
        // out := out + c
        if c > 0 {
            bin_write_lit(a, s1, c);
            bin_add(a, s1, out);
            erase_value(a, s1);
        }
    }
}

/// The shift-shadowed bit wasn't enough: bump a binary counter by the length
/// of another value tape is not provided; use unary mirrors instead.
///
/// Set the flag iff `|x| > |y|` (content lengths of two value tapes).
pub fn unary_len_gt(a: &mut Asm, x: Tape, y: Tape, f: Tape) {
    flag_clear(a, f);
    a.move_(x, Right);
    a.move_(y, Right);
    let top = a.new_label();
    let done = a.new_label();
    a.bind(top);
    a.if3(
        x,
        |a| nonblank_len_cmp_arm(a, x, y, f, top, done),
        |a| nonblank_len_cmp_arm(a, x, y, f, top, done),
        |a| a.goto(done), // x exhausted first or together: not greater
    );
    a.bind(done);
    rewind(a, x);
    rewind(a, y);
}

fn nonblank_len_cmp_arm(
    a: &mut Asm,
    x: Tape,
    y: Tape,
    f: Tape,
    top: super::asm::Label,
    done: super::asm::Label,
) {
    a.if3(
        y,
        |a| {
            a.move_(x, Right);
            a.move_(y, Right);
            a.goto(top);
        },
        |a| {
            a.move_(x, Right);
            a.move_(y, Right);
            a.goto(top);
        },
        |a| {
            flag_set(a, f);
            a.goto(done);
        },
    );
}

/// Set the flag iff `|q| > 2 |x|` (content lengths of two value tapes): walk
/// `q` two cells per `x` cell.
pub fn count_gt_double(a: &mut Asm, q: Tape, x: Tape, f: Tape) {
    flag_clear(a, f);
    a.move_(q, Right);
    a.move_(x, Right);
    let top = a.new_label();
    let done = a.new_label();
    a.bind(top);
    a.if3(
        x,
        |a| double_step_arm(a, q, x, top, done),
        |a| double_step_arm(a, q, x, top, done),
        |a| {
            // x exhausted: q is longer than 2|x| iff it still has content.
            a.if3(
                q,
                |a| {
                    flag_set(a, f);
                    a.goto(done);
                },
                |a| {
                    flag_set(a, f);
                    a.goto(done);
                },
                |a| a.goto(done),
            );
        },
    );
    a.bind(done);
    rewind(a, q);
    rewind(a, x);
}

fn double_step_arm(a: &mut Asm, q: Tape, x: Tape, top: super::asm::Label, done: super::asm::Label) {
    for _ in 0..2 {
        a.if3(
            q,
            |a| a.move_(q, Right),
            |a| a.move_(q, Right),
            |a| a.goto(done),
        );
    }
    a.move_(x, Right);
    a.goto(top);
}

// =============================================================================
// Stack tapes
// =============================================================================

/// Establish the stack invariant on a fresh tape (head to cell 1).
pub fn stack_init(a: &mut Asm, t: Tape) {
    a.move_(t, Right);
}

/// Push one unit. O(1).
pub fn stack_push0(a: &mut Asm, t: Tape) {
    a.write(t, Zero);
    a.move_(t, Right);
}

/// Pop one unit if any. O(1).
pub fn stack_pop(a: &mut Asm, t: Tape) {
    a.move_(t, Left);
    a.if3(
        t,
        |a| a.write(t, Blank),
        |a| a.write(t, Blank),
        |a| a.move_(t, Right), // was empty; restore parking
    );
}

/// Move `target` one step in `dir` for every unit on the stack tape,
/// non-destructively; the stack re-parks afterwards. Costs ~2 |stack|.
pub fn shadow_walk(a: &mut Asm, stack: Tape, target: Tape, dir: Dir) {
    a.move_(stack, Left);
    a.while_in(stack, &BITS, |a| {
        a.move_(target, dir);
        a.move_(stack, Left);
    });
    a.move_(stack, Right);
    to_end(a, stack);
}

/// Drain the stack, moving `target` one step in `dir` per unit. Post: stack
/// empty and parked on cell 1.
pub fn stack_drain(a: &mut Asm, stack: Tape, target: Tape, dir: Dir) {
    a.move_(stack, Left);
    a.while_in(stack, &BITS, |a| {
        a.write(stack, Blank);
        a.move_(target, dir);
        a.move_(stack, Left);
    });
    a.move_(stack, Right);
}

/// Set the flag iff the binary counter is zero (no explicit one-bits).
pub fn bin_is_zero(a: &mut Asm, t: Tape, f: Tape) {
    flag_set(a, f);
    a.move_(t, Right);
    a.while_in(t, &[Zero], |a| a.move_(t, Right));
    a.if3(
        t,
        |_| unreachable_blank_arm(),
        |a| flag_clear(a, f),
        |_| {},
    );
    rewind(a, t);
}
