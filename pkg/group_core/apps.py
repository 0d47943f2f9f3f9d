from django.apps import AppConfig


class GroupCoreConfig(AppConfig):
    default_auto_field = 'django.db.models.BigAutoField'
    name = 'group_core'
    verbose_name = 'Group arithmetic and sets'
