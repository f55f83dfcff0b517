"""
Application Factory
Erstellt die Flask-App für die HTTP-Schnittstelle; die Rechnungen selbst
liegen in awn.services und werden auch von der CLI genutzt
"""
import logging
from typing import Optional

from awn.config import Config
from awn.utils.logger import setup_all_loggers

__version__ = '0.3.0'

error_logger = logging.getLogger('errors')


def create_app(config: Optional[Config] = None):
    """Application Factory Pattern für bessere Testbarkeit"""
    from flask import Flask, jsonify

    from awn.services.errors import AwError
    from awn.services.selfcheck import make_comparator

    app = Flask(__name__)

    # Logger initialisieren (vor allem anderen)
    setup_all_loggers()

    config = config or Config.from_env()
    app.config['AW_CONFIG'] = config
    app.config['JSON_SORT_KEYS'] = False
    app.extensions['aw_comparator'] = make_comparator(config)

    from awn.routes.algebra import algebra_bp
    from awn.routes.casimir import casimir_bp
    from awn.routes.health import health_bp
    from awn.routes.representations import representations_bp

    app.register_blueprint(health_bp)
    app.register_blueprint(algebra_bp)
    app.register_blueprint(casimir_bp)
    app.register_blueprint(representations_bp)

    @app.errorhandler(AwError)
    def aw_error(error: AwError):
        body = {"error": error.code, "message": str(error)}
        position = getattr(error, 'position', None)
        if position is not None:
            body["position"] = position
        return jsonify(body), 400

    @app.errorhandler(404)
    def not_found(error):
        return jsonify({
            "error": "Not Found",
            "message": "Der angeforderte Endpoint existiert nicht"
        }), 404

    @app.errorhandler(500)
    def internal_error(error):
        error_logger.error(f"❌ HTTP 500: {error}")
        return jsonify({
            "error": "Internal Server Error",
            "message": "Ein interner Fehler ist aufgetreten"
        }), 500

    @app.route('/')
    def index():
        return {
            "service": "aw(n) API",
            "version": __version__,
            "status": "running",
            "n": config.n,
            "endpoints": {
                "health": {"path": "/health", "method": "GET", "description": "Health Check"},
                "nf": {"path": "/algebra/nf", "method": "POST", "description": "Normalform"},
                "eq": {"path": "/algebra/eq", "method": "POST", "description": "Gleichheit zweier Ausdrücke"},
                "apply": {"path": "/algebra/apply", "method": "POST", "description": "Morphismus-Wort anwenden"},
                "relations": {
                    "path": "/algebra/relations?n=4&family=four-cluster",
                    "method": "GET",
                    "description": "Relationskatalog"
                },
                "casimir": {"path": "/casimir?set=1,2,4", "method": "GET", "description": "Casimir-Elemente"},
                "phi": {"path": "/phi", "method": "POST", "description": "Bild in U_q(sl2)^⊗n"},
                "racah": {"path": "/racah", "method": "POST", "description": "Racah-Grenzwert"}
            }
        }

    return app
