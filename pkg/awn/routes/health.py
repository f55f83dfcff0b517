"""
Health-Endpoint
Verantwortlich für: Erreichbarkeit und die aktive Konfiguration
"""
from datetime import datetime, timezone

from flask import Blueprint, current_app, jsonify

health_bp = Blueprint('health', __name__)


@health_bp.route('/health', methods=['GET'])
def health_check():
    """Health-Check für Monitoring"""
    config = current_app.config['AW_CONFIG']
    return jsonify({
        "status": "healthy",
        "n": config.n,
        "degree_bound": config.degree_bound,
        "timestamp": datetime.now(timezone.utc).isoformat()
    }), 200
