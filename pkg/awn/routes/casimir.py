"""
Casimir-Endpoints
"""
from flask import Blueprint, jsonify, request

from awn.routes import request_config
from awn.services.casimir import gamma_basis, omega, set_str
from awn.services.errors import AwError

casimir_bp = Blueprint('casimir', __name__)


@casimir_bp.route('/casimir', methods=['GET'])
def get_casimir():
    """GET /casimir?n=4&set=1,2,4; ohne set die ganze Basis von Γ_n"""
    config = request_config({'n': request.args.get('n')})
    text = request.args.get('set')
    if text:
        try:
            sets = [[int(x) for x in text.split(',')]]
        except ValueError:
            raise AwError(f"Ungültige Menge: {text!r}")
    else:
        sets = gamma_basis(config.n)
    return jsonify({
        "n": config.n,
        "elements": [{"set": set_str(S), "omega": str(omega(S, config.n))} for S in sets]
    }), 200
