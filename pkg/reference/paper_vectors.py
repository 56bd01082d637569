"""
Transcribed Conserved Vectors

The published conserved vectors, transcribed display by display into the
expression text grammar. Nothing here is corrected: where the display is
typographically ambiguous the chosen reading is recorded in
TRANSCRIPTION_NOTES, and the comparison against derived vectors reports
whatever differs.

Vectors for T, R, Xtilde, Ytilde hold the opaque F(u) and are specialized per
case by the fixture manager.
"""

from typing import Dict, List, Tuple


class PaperVectors:
    """Transcriptions keyed by generator name; each value is (C1, C2, C3) text."""

    # Any f(u)
    GENERAL: Dict[str, Tuple[str, str, str]] = {
        'T': (
            "-2*y*u_t^2 - u_x*u_t",
            "2*x*u_t^2 - u_y*u_t",
            "1/2*u_x^2 + 1/2*u_y^2 - 2*(x^2+y^2)*u_t^2 - F(u)",
        ),
        'R': (
            "-1/2*y*u_x^2 + 1/2*y*u_y^2 + 2*y*(x^2+y^2)*u_t^2 + x*u_x*u_y - y*F(u)",
            "-1/2*x*u_x^2 - 1/2*x*u_y^2 - 2*x*(x^2+y^2)*u_t^2 - y*u_x*u_y + x*F(u)",
            "-2*y^2*u_x^2 - 2*x^2*u_y^2 + 4*x*y*u_x*u_y - 4*y*(x^2+y^2)*u_x*u_t"
            " + 4*x*(x^2+y^2)*u_y*u_t",
        ),
        'Xtilde': (
            "-1/2*u_x^2 + 1/2*u_y^2 + 2*(x^2+3*y^2)*u_t^2 + 2*y*u_x*u_t - 2*x*u_y*u_t - F(u)",
            "-4*x*y*u_t^2 - u_x*u_y + 2*x*u_x*u_t + 2*y*u_y*u_t",
            "-3*y*u_x^2 - y*u_y^2 + 4*y*(x^2+y^2)*u_t^2 + 2*x*u_x*u_y - 4*(x^2+y^2)*u_x*u_t + 2*y*F(u)",
        ),
        'Ytilde': (
            "-4*x*y*u_t^2 - u_x*u_y - 2*x*u_x*u_t - 2*y*u_y*u_t",
            "1/2*u_x^2 - 1/2*u_y^2 + 2*(3*x^2+y^2)*u_t^2 + 2*y*u_x*u_t - 2*x*u_y*u_t - F(u)",
            "x*u_x^2 + 3*x*u_y^2 - 4*x*(x^2+y^2)*u_t^2 - 2*y*u_x*u_y - 4*(x^2+y^2)*u_y*u_t - 2*x*F(u)",
        ),
    }

    # f(u) = 0
    HOMOGENEOUS: Dict[str, Tuple[str, str, str]] = {
        'V1': (
            "-1/2*(t*x-x^2*y-y^3)*u_x^2 + 1/2*(t*x-x^2*y-y^3)*u_y^2 + 2*t*(x^3+x*y^2-t*y)*u_t^2"
            " - (x^3+x*y^2+t*y)*u_x*u_y - (t^2-(x^2+y^2)^2)*u_x*u_t - 2*t*(x^2+y^2)*u_y*u_t"
            " - t*u*u_x - 2*t*y*u*u_t + y*u^2",
            "1/2*(x^3+t*y+x*y^2)*u_x^2 - 1/2*(x^3+t*y+x*y^2)*u_y^2 + 2*t*(x^2*y+y^3+t*x)*u_t^2"
            " - (t*x-x^2*y-y^3)*u_x*u_y + 2*t*(x^2+y^2)*u_x*u_t - (t^2-(x^2+y^2)^2)*u_y*u_t"
            " - t*u*u_y + 2*t*x*u*u_t - x*u^2",
            "1/2*(t^2-x^4-4*t*x*y+2*x^2*y^2+3*y^4)*u_x^2 + 1/2*(t^2+3*x^4+4*t*x*y+2*x^2*y^2-y^4)*u_y^2"
            " - 2*(x^2+y^2)*(t^2-(x^2+y^2)^2)*u_t^2 + 2*(t*(x^2-y^2)-2*x*y*(x^2+y^2))*u_x*u_y"
            " - 4*(x^2+y^2)*(t*x-x^2*y-y^3)*u_x*u_t - 4*(x^2+y^2)*(x^3+t*y+x*y^2)*u_y*u_t"
            " - 2*t*y*u*u_x + 2*t*x*u*u_y - 4*t*(x^2+y^2)*u*u_t + 2*(x^2+y^2)*u^2",
        ),
        'V2': (
            "-1/2*(t-4*x*y)*u_x^2 + 1/2*(t-4*x*y)*u_y^2 + (2*t*(x^2+3*y^2)-4*x*y*(x^2+y^2))*u_t^2"
            " - (3*x^2-y^2)*u_x*u_y + 2*(x^3+t*y+x*y^2)*u_x*u_t - 2*(t*x-x^2*y-y^3)*u_y*u_t"
            " + 2*y*u*u_x + 4*y^2*u*u_t",
            "1/2*(3*x^2-y^2)*u_x^2 - 1/2*(3*x^2-y^2)*u_y^2 + 2*(x^4-2*t*x*y-y^4)*u_t^2"
            " - (t-4*x*y)*u_x*u_y + 2*(t*x-x^2*y-y^3)*u_x*u_t + 2*(x^3+t*y+x*y^2)*u_y*u_t"
            " + 2*y*u*u_y - 4*x*y*u*u_t - u^2",
            "(7*x*y^2-x^3-3*t*y)*u_x^2 + (5*x^3-3*x*y^2-t*y)*u_y^2 + 4*(x^2+y^2)*(x^3+t*y+x*y^2)*u_t^2"
            " + 2*(t*x-7*x^2*y+y^3)*u_x*u_y - 4*(t-4*x*y)*(x^2+y^2)*u_x*u_t"
            " - 4*(3*x^4+2*x^2*y^2-y^4)*u_y*u_t"
            " + 2*x*u^2 + 4*y^2*u*u_x - 4*x*y*u*u_y + 8*y*(x^2+y^2)*u*u_t",
        ),
        'V3': (
            "-1/2*(x^2-3*y^2)*u_x^2 + 1/2*(x^2-3*y^2)*u_y^2 + (2*x^4-4*t*x*y-2*y^4)*u_t^2"
            " - (t+4*x*y)*u_x*u_y + (2*t*x-2*x^2*y+2*y^3)*u_x*u_t - (2*x^3+2*t*y+2*x*y^2)*u_y*u_t"
            " - 4*x*y*u*u_t - 2*x*u*u_x + u^2",
            "1/2*(t+4*x*y)*u_x^2 - 1/2*(t+4*x*y)*u_y^2 + (6*t*x^2+4*x^3*y+2*t*y^2+4*x*y^3)*u_t^2"
            " - (x^2-3*y^2)*u_x*u_y + 2*(x^3+t*y+x*y^2)*u_x*u_t - 2*(t*x-x^2*y-y^3)*u_y*u_t"
            " + 2*x*u_y*u + 4*x^2*u_t*u",
            "(t*x-3*x^2*y+5*y^3)*u_x^2 + (3*t*x+7*x^2*y-y^3)*u_y^2"
            " + (-4*t*x^3+4*x^4*y-4*t*x*y^2+8*x^2*y^3+y^5)*u_t^2 + 2*(x^3-t*y-7*x*y^2)*u_x*u_y"
            " - 2*(2*x^4-4*x^2*y^2-6*y^4)*u_x*u_t - 4*(x^2+y^2)*(t+4*x*y)*u_y*u_t"
            " - 8*x^3*u*u_t - 8*x*y^2*u*u_t - 4*x^2*u*u_y - 8*x*y*u*u_x + 2*y*u^2",
        ),
    }

    # f(u) = 0 and f(u) = u
    W_BETA: Tuple[str, str, str] = (
        "b*(u_x+2*y*u_t) - u*(b_x+2*y*b_t)",
        "b*(u_y-2*x*u_t) - u*(b_y-2*x*b_t)",
        "b*(-2*x*u_y+2*y*u_x+4*(x^2+y^2)*u_t) + 2*u*(x*b_y-y*b_x-2*(x^2+y^2)*b_t)",
    )


TRANSCRIPTION_NOTES: Dict[str, List[str]] = {
    'V1': [
        "A1 and A2 are printed over three lines each; every continuation line starts with an operator.",
    ],
    'V3': [
        "C2: the last line '2xu_yu+4x^2u_tu' has no leading operator; '+' is assumed.",
        "C3: the second line '(-4tx^3+...+y^5)u_t^2' has no leading operator; '+' is assumed.",
    ],
    'W': [
        "W3: the bracket opened at 'beta[-2xu_y+2yu_x+4(x^2+y^2)u_t' is never closed; it is closed "
        "before '+2u[...]'. Closing it at the end instead would multiply the second line by beta, "
        "which is not linear in beta.",
    ],
}
"""Readings chosen where a display is typographically ambiguous."""
