from django.apps import AppConfig


class RepfnConfig(AppConfig):
    default_auto_field = 'django.db.models.BigAutoField'
    name = 'repfn'
    verbose_name = 'Representation functions'
