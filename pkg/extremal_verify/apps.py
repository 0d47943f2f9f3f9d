from django.apps import AppConfig


class ExtremalVerifyConfig(AppConfig):
    default_auto_field = 'django.db.models.BigAutoField'
    name = 'extremal_verify'
    verbose_name = 'Extremal verification'
