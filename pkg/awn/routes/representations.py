"""
Darstellungs-Endpoints
phi in U_q(sl2)^⊗n und der Racah-Grenzwert
"""
from flask import Blueprint, jsonify

from awn.config import parse_rational
from awn.routes import payload, request_config, required
from awn.services.parser import read
from awn.services.racah import DEFAULT_PRECISION, leading_term, substitute_K
from awn.services.uq import RepSpec, matrix_str, phi

representations_bp = Blueprint('representations', __name__)


@representations_bp.route('/phi', methods=['POST'])
def phi_image():
    """POST /phi {"expr": "...", "spins": "1/2,1/2,1", "eval_q": "3/2"}"""
    data = payload()
    config = request_config(data)
    spec = RepSpec.parse(data['spins']) if data.get('spins') else RepSpec(config.rep_spins())
    q0 = parse_rational(data.get('eval_q')) or config.eval_q
    image = phi(read(required(data, 'expr'), config.n, expand=False), spec, q0)
    return jsonify({
        "spins": str(spec),
        "q0": str(q0) if q0 is not None else None,
        "zero": image.is_zero_matrix,
        "matrix": matrix_str(image).split("\n")
    }), 200


@representations_bp.route('/racah', methods=['POST'])
def racah_limit():
    """POST /racah {"expr": "...", "precision": 6}"""
    data = payload()
    config = request_config(data)
    precision = int(data.get('precision') or DEFAULT_PRECISION)
    series = substitute_K(read(required(data, 'expr'), config.n, expand=False), precision)
    if series.is_zero():
        return jsonify({"zero": True}), 200
    order, poly = leading_term(series)
    return jsonify({"zero": False, "order": order, "leading": str(poly)}), 200
