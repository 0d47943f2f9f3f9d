from django.apps import AppConfig


class EnergyTcountConfig(AppConfig):
    default_auto_field = 'django.db.models.BigAutoField'
    name = 'energy_tcount'
    verbose_name = 'Higher energies and tuple counts'
